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

#ifndef MMSPP_PROBLEM_H_
#define MMSPP_PROBLEM_H_

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "mmspp/component.h"
#include "mmspp/regularizer.h"
#include "mmspp/types.h"

namespace mmspp {

// min_x max_y  phi(x) + (1/N) sum_i [g_i(x) + f_i(x,y) - h_i(y)] - psi(y)
//   s.t.       A x + B y + c = 0.
struct ProblemSpec {
  Index n = 0;
  Index m_dim = 0;
  Index q = 0;
  std::vector<ComponentPtr> components;
  Regularizer phi;
  Regularizer psi;
  Mat A;
  Mat B;
  Vec c;

  // Strong convexity / concavity moduli of the averaged functions.
  double mu_x = 0.0;
  double mu_y = 0.0;
  // Maximum component Lipschitz constants of grad g_i, grad h_i, grad f_i.
  double L_g_bar = 0.0;
  double L_h_bar = 0.0;
  double L_f_bar = 0.0;
  // Lower bounds on the conjugate Hessians.
  double mu_star_x = 0.0;
  double mu_star_y = 0.0;

  Index N() const { return static_cast<Index>(components.size()); }
  double L_phi_x() const { return L_f_bar + L_g_bar; }
  double L_phi_y() const { return L_f_bar + L_h_bar; }
  double mu_min() const { return std::min(mu_x, mu_y); }
  double mu_max() const { return std::max(mu_x, mu_y); }

  // Throws DimensionError / InvalidArgument on any violated invariant.
  void Validate() const;
};

// Assembles a problem from components, filling the moduli and Lipschitz
// constants. For quadratic-bilinear components they are computed exactly:
// mu from the averaged Hessians, L from per-component spectral norms, and
// mu_star = 1 / L_phi. Other component kinds require the caller to set them.
ProblemSpec MakeProblem(std::vector<ComponentPtr> components, Regularizer phi,
                        Regularizer psi, Mat A, Mat B, Vec c);

struct SaddlePoint {
  Vec x_star;
  Vec y_star;
  Vec lambda_star;
  double kkt_residual = 0.0;
};

// Current iterate plus the variance-reduction reference and the exact
// full gradients cached at that reference. The cache is refreshed only
// through RefreshReference, which bumps `ref_token`.
struct IterateState {
  Vec x;
  Vec y;
  Vec lambda;
  Vec x_ref;
  Vec y_ref;
  Vec lambda_ref;
  // (1/N) sum [grad g_i + grad_x f_i](x_ref, y_ref)
  Vec grad_ref_x;
  // (1/N) sum [-grad h_i + grad_y f_i](x_ref, y_ref)
  Vec grad_ref_y;
  std::uint64_t ref_token = 0;

  static IterateState Initial(const ProblemSpec& p, Vec x0, Vec y0, Vec l0);

  // Sets the reference to the current (x, y, lambda) and recomputes the
  // cached gradients.
  void RefreshReference(const ProblemSpec& p);
};

// Averages of the X-side and Y-side gradients: gx = mean(grad g_i +
// grad_x f_i), gy = mean(grad h_i - grad_y f_i). Summation runs in ascending
// component order.
std::pair<Vec, Vec> FullGradients(const ProblemSpec& p, const Vec& x,
                                  const Vec& y);

// Returns +inf when x or y leaves the regularizer domains.
double LagrangianValue(const ProblemSpec& p, const Vec& x, const Vec& y,
                       const Vec& lambda);

Vec NaturalResidual(const ProblemSpec& p, Block block, const Vec& x,
                    const Vec& y, const Vec& lambda, double alpha);

double KktResidual(const ProblemSpec& p, const Vec& x, const Vec& y,
                   const Vec& lambda);

// Direct solve of the linear KKT system. Requires quadratic-bilinear
// components and zero regularizers.
SaddlePoint SolveKktReference(const ProblemSpec& p);

}  // namespace mmspp

#endif  // MMSPP_PROBLEM_H_
