// Copyright 2026 The minimax-spp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMSPP_SSN_H_
#define MMSPP_SSN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmspp/problem.h"
#include "mmspp/regularizer.h"
#include "mmspp/sampling.h"
#include "mmspp/types.h"

namespace mmspp {

struct SsnParams {
  double gamma_hat = 0.4;
  double rho = 0.9;
  double tau = 0.1;
  double tau1 = 0.01;
  double tau2 = 1e-6;
  // Lower bound on the CG damping: eta_j = max(eta_floor, tau1 min(tau2,
  // ||F_j||)). Zero recovers the undamped-floor schedule.
  double eta_floor = 1e-7;
  int max_newton_iters = 100;
  int max_line_search = 200;
  // Jacobi preconditioning of the CG solve.
  bool precondition = true;

  void Validate() const;
};

// One conjugate-space subproblem for block X (anchor x^k, other y^{k+1}) or
// block Y (anchor y^k, other x^k):
//   find xi = (xi_1, ..., xi_b) with
//   conj_grad_{kappa(i)}(xi_i) = prox_{alpha reg}(anchor - drift
//                                                 - (alpha / b) sum_j xi_j).
struct SubproblemSpec {
  const ProblemSpec* problem = nullptr;
  Block block = Block::kX;
  Vec anchor;
  Vec other_point;
  double alpha = 1.0;
  BatchSample batch;
  Vec drift;
  const Regularizer* regularizer = nullptr;
  double eps_sub = 1e-10;
  SsnParams ssn;

  Index dim() const { return anchor.size(); }
  Index b() const { return static_cast<Index>(batch.size()); }
  Index size() const { return dim() * b(); }
  void Validate() const;
};

// Builds the X or Y subproblem for `problem` with the block's regularizer.
SubproblemSpec MakeSubproblem(const ProblemSpec& problem, Block block,
                              Vec anchor, Vec other_point, double alpha,
                              BatchSample batch, Vec drift, double eps_sub,
                              const SsnParams& ssn);

// Stacked unknown: block i occupies [i * dim, (i + 1) * dim).
using XiVector = Vec;

// Shared prox argument z = anchor - drift - (alpha / b) sum_i xi_i.
Vec ProxArgument(const XiVector& xi, const SubproblemSpec& spec);

// Forward gradients of the batch components at the anchor.
XiVector DefaultStart(const SubproblemSpec& spec);

// If `scale` is given it receives the largest magnitude among the terms of
// F (conjugate gradients, prox argument, anchor, drift).
Vec ResidualF(const XiVector& xi, const SubproblemSpec& spec,
              double* scale = nullptr);

// Smallest residual norm that evaluation round-off lets the Newton loop
// certify: 32 eps_mach sqrt(size) scale. The loop stops at
// max(eps_sub, floor).
double ResidualFloor(double scale, Index size);

// Potential whose gradient is ResidualF. If `magnitude` is given it receives
// the summed absolute size of the terms, which bounds round-off in the value.
double ObjectiveI(const XiVector& xi, const SubproblemSpec& spec,
                  double* magnitude = nullptr);

// Matrix-free element of the surrogate generalized Jacobian at xi:
//   (W d)_i = H_i d_i + (alpha / b) U sum_j d_j.
class JacobianW {
 public:
  JacobianW(const XiVector& xi, const SubproblemSpec& spec);

  Index size() const { return dim_ * b_; }
  Vec Apply(const Vec& d) const;
  // Main diagonal of W.
  const Vec& Diagonal() const { return diag_; }
  // Dense materialization; for tests and small systems only.
  Mat ToDense() const;

 private:
  const SubproblemSpec* spec_;
  XiVector xi_;
  Index dim_;
  Index b_;
  Vec u_diag_;
  Vec diag_;
};

struct CgResult {
  Vec x;
  int iterations = 0;
  double residual = 0.0;
};

using LinearOperator = std::function<Vec(const Vec&)>;

// Solves (W + eta I) x = rhs to ||residual|| <= tol with at most max_iter
// iterations. `precond_diag`, if non-empty, is the diagonal of W used as a
// Jacobi preconditioner. Throws NonConvergenceError on iteration cap and
// Error on non-finite values.
CgResult CgSolve(const LinearOperator& W, double eta, const Vec& rhs,
                 double tol, int max_iter, const Vec& precond_diag = Vec());

struct LineSearchResult {
  double step = 1.0;
  int ell = 0;
  XiVector xi;
  double objective = 0.0;
};

// Smallest ell with I(xi + rho^ell d) <= I(xi) + gamma_hat rho^ell <F, d>
// and all blocks inside the conjugate domains. The comparison allows a
// round-off margin of a few ulps of the terms of I.
LineSearchResult ArmijoSearch(const XiVector& xi, const Vec& d,
                              const Vec& grad, double objective,
                              const SubproblemSpec& spec);

struct NewtonIteration {
  double f_norm = 0.0;
  double step = 0.0;
  int cg_iters = 0;
  double eta = 0.0;
  double cg_residual = 0.0;
  double cg_tol = 0.0;
  int ell = 0;
  double objective = 0.0;
};

struct NewtonReport {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  // Stopped at the round-off floor above eps_sub.
  bool limited_by_roundoff = false;
  std::vector<NewtonIteration> history;
};

struct SubproblemResult {
  XiVector xi;
  NewtonReport report;
  // Optional trace of all iterates, for diagnostics.
  std::vector<XiVector> iterates;
};

// Globalized semismooth Newton method. Throws NonConvergenceError (message
// includes the report summary) when max_newton_iters is reached.
SubproblemResult SolveSubproblem(const SubproblemSpec& spec,
                                 const std::optional<XiVector>& warm_start =
                                     std::nullopt,
                                 bool keep_iterates = false);

// prox_{alpha reg}(anchor - drift - (alpha / b) sum_i xi_i).
Vec RecoverPrimal(const XiVector& xi, const SubproblemSpec& spec);

// alpha * eps_sub / (mu_star * b).
double InexactnessBound(double eps_sub, double alpha, Index b, double mu_star);

// CSV rows "s,k,block,iter,f_norm,step,cg_iters,eta" (no header).
std::string NewtonReportCsvRows(const NewtonReport& report, std::uint64_t s,
                                std::uint64_t k, Block block);
inline constexpr const char* kNewtonCsvHeader =
    "s,k,block,iter,f_norm,step,cg_iters,eta";

}  // namespace mmspp

#endif  // MMSPP_SSN_H_
