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

#ifndef MMSPP_DRIVER_H_
#define MMSPP_DRIVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmspp/problem.h"
#include "mmspp/sampling.h"
#include "mmspp/ssn.h"
#include "mmspp/types.h"

namespace mmspp {

// delta_s = delta0 (constant) or delta0 * ratio^s (geometric).
struct DeltaSchedule {
  enum class Kind { kConstant, kGeometric };
  Kind kind = Kind::kConstant;
  double delta0 = 0.0;
  double ratio = 1.0;

  double At(std::uint64_t s) const;
  void Validate() const;
};

struct SolverConfig {
  int S = 30;
  int m_inner = 5;
  double alpha = 1e-2;
  SamplerConfig sampler;
  DeltaSchedule delta;
  double eps_floor = 1e-10;
  bool project_each_outer = false;
  SsnParams ssn;
  // When false the wall_ms column is written as 0 so that CSV output is a
  // pure function of the configuration.
  bool record_wall_time = false;
  // Collect per-iteration Newton rows in RunReport::newton_csv.
  bool record_newton = false;
  // Known saddle point; enables the distance columns and the rate fit.
  std::optional<SaddlePoint> reference;
  // Starting point; empty vectors mean zero.
  Vec x0;
  Vec y0;
  Vec lambda0;
  // Called after every inner step with (s, k, state).
  std::function<void(std::uint64_t, std::uint64_t, const IterateState&)>
      on_step;

  void Validate(const ProblemSpec& p) const;
};

struct EpochRow {
  std::uint64_t s = 0;
  double dist_sq_primal = 0.0;
  double dist_sq_dual = 0.0;
  double constraint_violation = 0.0;
  double kkt_residual = 0.0;
  double mean_newton_iters = 0.0;
  double wall_ms = 0.0;
};

struct RunReport {
  // Row s describes the reference after s epochs; row 0 is the start.
  std::vector<EpochRow> rows;
  bool has_reference = false;
  double alpha = 0.0;
  double alpha_bound = 0.0;
  bool alpha_above_bound = false;
  // NaN unless a reference is known and at least 10 epochs ran.
  double fitted_ratio = 0.0;
  double theoretical_ratio = 0.0;
  std::string newton_csv;

  // Columns s,dist_sq_primal,dist_sq_dual,constraint_violation,
  // kkt_residual,mean_newton_iters,wall_ms. Distance columns read "nan"
  // without a reference.
  std::string ToCsv() const;
  std::string SummaryJson() const;
};

inline constexpr const char* kRunCsvHeader =
    "s,dist_sq_primal,dist_sq_dual,constraint_violation,kkt_residual,"
    "mean_newton_iters,wall_ms";

// Thrown when an iterate becomes non-finite; carries the report up to the
// last finite epoch.
class RunAborted : public DivergenceError {
 public:
  RunAborted(const std::string& what, RunReport report)
      : DivergenceError(what), report_(std::move(report)) {}
  const RunReport& report() const { return report_; }

 private:
  RunReport report_;
};

// Largest constant step size covered by the linear-rate guarantee.
double TheoreticalAlphaBound(const ProblemSpec& p, int m_inner, Index b);

// max{eps_floor, delta_s min(||F^x_nat(x_ref)||, ||F^y_nat(y_ref)||)} with
// unit-step natural residuals at (x_ref, y_ref, lambda_ref).
double ToleranceSchedule(const ProblemSpec& p, const Vec& x_ref,
                         const Vec& y_ref, const Vec& lambda_ref,
                         double delta_s, double eps_floor);

struct InnerStepInfo {
  BatchSample batch;
  VarianceCorrection correction;
  NewtonReport y_report;
  NewtonReport x_report;
};

// One variance-reduced implicit step: Y subproblem at frozen x^k, X
// subproblem at frozen y^{k+1}, then the multiplier step.
IterateState InnerStep(const IterateState& state, const ProblemSpec& p,
                       const SolverConfig& cfg, std::uint64_t s,
                       std::uint64_t k, double eps_sub,
                       InnerStepInfo* info = nullptr);

struct ProjectionResult {
  Vec x;
  Vec y;
  Vec zeta;
};

// Euclidean projection onto {A x + B y + c = 0}. The Cholesky factor R of
// AA' + BB' is taken from a thin QR of [A B]' once at construction, so
// solves see cond([A B]) rather than its square.
class ConstraintProjector {
 public:
  explicit ConstraintProjector(const ProblemSpec& p);
  ProjectionResult Project(const Vec& x, const Vec& y) const;

 private:
  const ProblemSpec* p_;
  Mat q_thin_;  // (n + m) x q
  Mat r_;       // q x q upper triangular
};

ProjectionResult ProjectOntoC(const ProblemSpec& p, const Vec& x, const Vec& y);

std::pair<IterateState, RunReport> OuterLoop(const ProblemSpec& p,
                                             const SolverConfig& cfg);

// 1 / (1 + 2 alpha mu_min).
double TheoreticalRatio(double alpha, double mu_min);

// Geometric mean of successive ratios d[s+1] / d[s] over the tail half of
// the sequence, truncated where d falls below `floor`. NaN if fewer than two
// usable points remain.
double FitTailRatio(const std::vector<double>& d, double floor = 1e-24);

struct ContractionEstimate {
  double fitted_ratio = 0.0;
  double theoretical_ratio = 0.0;
};

ContractionEstimate EstimateContraction(const RunReport& report,
                                        const ProblemSpec& p);

// Least-squares slope of log(d[s]) against s over entries above `floor`.
double LogLinearSlope(const std::vector<double>& d, double floor = 1e-300);

}  // namespace mmspp

#endif  // MMSPP_DRIVER_H_
