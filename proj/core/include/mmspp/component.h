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

#ifndef MMSPP_COMPONENT_H_
#define MMSPP_COMPONENT_H_

#include <memory>
#include <string>

#include "mmspp/structured_matrix.h"
#include "mmspp/types.h"

namespace mmspp {

// One summand (g_i, h_i, f_i) of the finite-sum objective
//   (1/N) sum_i [g_i(x) + f_i(x, y) - h_i(y)].
//
// The X-side function is phi^x_{y,i}(x) = g_i(x) + f_i(x, y) with y frozen and
// the Y-side function is phi^y_{x,i}(y) = h_i(y) - f_i(x, y) with x frozen.
// Both must be strongly convex; their conjugate gradients invert the forward
// gradients.
class ComponentOracle {
 public:
  virtual ~ComponentOracle() = default;

  virtual Index n() const = 0;
  virtual Index m() const = 0;

  virtual double g_val(const Vec& x) const = 0;
  virtual Vec grad_g(const Vec& x) const = 0;
  virtual double h_val(const Vec& y) const = 0;
  virtual Vec grad_h(const Vec& y) const = 0;
  virtual double f_val(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_f_x(const Vec& x, const Vec& y) const = 0;
  virtual Vec grad_f_y(const Vec& x, const Vec& y) const = 0;

  // The unique x with grad_g(x) + grad_f_x(x, y) = xi.
  virtual Vec conj_grad_x(const Vec& xi, const Vec& y) const = 0;
  // The unique y with grad_h(y) - grad_f_y(x, y) = xi.
  virtual Vec conj_grad_y(const Vec& xi, const Vec& x) const = 0;

  // Products with one element of the generalized Jacobian of the conjugate
  // gradients at xi, and the diagonal of that element.
  virtual Vec conj_jac_x_apply(const Vec& xi, const Vec& y,
                               const Vec& d) const = 0;
  virtual Vec conj_jac_y_apply(const Vec& xi, const Vec& x,
                               const Vec& d) const = 0;
  virtual Vec conj_jac_x_diag(const Vec& xi, const Vec& y) const = 0;
  virtual Vec conj_jac_y_diag(const Vec& xi, const Vec& x) const = 0;

  // Open domains of the conjugate oracles. The shipped catalog is defined
  // everywhere.
  virtual bool in_conj_domain_x(const Vec& xi, const Vec& y) const {
    (void)xi;
    (void)y;
    return true;
  }
  virtual bool in_conj_domain_y(const Vec& xi, const Vec& x) const {
    (void)xi;
    (void)x;
    return true;
  }

  virtual std::string kind() const = 0;

  // Convenience: gradients of phi^x_{y,i} and phi^y_{x,i}.
  Vec grad_phi_x(const Vec& x, const Vec& y) const {
    return grad_g(x) + grad_f_x(x, y);
  }
  Vec grad_phi_y(const Vec& x, const Vec& y) const {
    return grad_h(y) - grad_f_y(x, y);
  }
};

using ComponentPtr = std::shared_ptr<const ComponentOracle>;

// g(x) = x'Px/2 + p'x,  h(y) = y'Qy/2 + q'y,  f(x, y) = y'Kx
// with P (n x n) and Q (m x m) symmetric positive definite and K (m x n).
class QuadraticBilinearComponent final : public ComponentOracle {
 public:
  QuadraticBilinearComponent(StructuredMatrix P, Vec p, StructuredMatrix Q,
                             Vec q, StructuredMatrix K);

  Index n() const override { return P_.rows(); }
  Index m() const override { return Q_.rows(); }

  double g_val(const Vec& x) const override;
  Vec grad_g(const Vec& x) const override;
  double h_val(const Vec& y) const override;
  Vec grad_h(const Vec& y) const override;
  double f_val(const Vec& x, const Vec& y) const override;
  Vec grad_f_x(const Vec& x, const Vec& y) const override;
  Vec grad_f_y(const Vec& x, const Vec& y) const override;

  Vec conj_grad_x(const Vec& xi, const Vec& y) const override;
  Vec conj_grad_y(const Vec& xi, const Vec& x) const override;
  Vec conj_jac_x_apply(const Vec& xi, const Vec& y,
                       const Vec& d) const override;
  Vec conj_jac_y_apply(const Vec& xi, const Vec& x,
                       const Vec& d) const override;
  Vec conj_jac_x_diag(const Vec& xi, const Vec& y) const override;
  Vec conj_jac_y_diag(const Vec& xi, const Vec& x) const override;

  std::string kind() const override { return "quadratic_bilinear"; }

  const StructuredMatrix& P() const { return P_; }
  const StructuredMatrix& Q() const { return Q_; }
  const StructuredMatrix& K() const { return K_; }
  const Vec& p() const { return p_; }
  const Vec& q() const { return q_; }

 private:
  StructuredMatrix P_;
  StructuredMatrix Q_;
  StructuredMatrix K_;
  Vec p_;
  Vec q_;
  StructuredMatrix P_inv_;
  StructuredMatrix Q_inv_;
};

}  // namespace mmspp

#endif  // MMSPP_COMPONENT_H_
