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

#include "mmspp/component.h"

#include <utility>

namespace mmspp {

QuadraticBilinearComponent::QuadraticBilinearComponent(StructuredMatrix P,
                                                       Vec p,
                                                       StructuredMatrix Q,
                                                       Vec q,
                                                       StructuredMatrix K)
    : P_(std::move(P)),
      Q_(std::move(Q)),
      K_(std::move(K)),
      p_(std::move(p)),
      q_(std::move(q)) {
  if (!P_.is_square() || !Q_.is_square()) {
    throw DimensionError("QuadraticBilinearComponent: P and Q must be square");
  }
  CheckDim(p_.size(), P_.rows(), "QuadraticBilinearComponent p");
  CheckDim(q_.size(), Q_.rows(), "QuadraticBilinearComponent q");
  CheckDim(K_.rows(), Q_.rows(), "QuadraticBilinearComponent K rows");
  CheckDim(K_.cols(), P_.rows(), "QuadraticBilinearComponent K cols");
  P_inv_ = P_.InverseSpd();
  Q_inv_ = Q_.InverseSpd();
}

double QuadraticBilinearComponent::g_val(const Vec& x) const {
  return 0.5 * x.dot(P_.Apply(x)) + p_.dot(x);
}

Vec QuadraticBilinearComponent::grad_g(const Vec& x) const {
  return P_.Apply(x) + p_;
}

double QuadraticBilinearComponent::h_val(const Vec& y) const {
  return 0.5 * y.dot(Q_.Apply(y)) + q_.dot(y);
}

Vec QuadraticBilinearComponent::grad_h(const Vec& y) const {
  return Q_.Apply(y) + q_;
}

double QuadraticBilinearComponent::f_val(const Vec& x, const Vec& y) const {
  return y.dot(K_.Apply(x));
}

Vec QuadraticBilinearComponent::grad_f_x(const Vec& x, const Vec& y) const {
  CheckDim(x.size(), n(), "grad_f_x");
  return K_.ApplyTranspose(y);
}

Vec QuadraticBilinearComponent::grad_f_y(const Vec& x, const Vec& y) const {
  CheckDim(y.size(), m(), "grad_f_y");
  return K_.Apply(x);
}

Vec QuadraticBilinearComponent::conj_grad_x(const Vec& xi,
                                            const Vec& y) const {
  return P_inv_.Apply(xi - p_ - K_.ApplyTranspose(y));
}

Vec QuadraticBilinearComponent::conj_grad_y(const Vec& xi,
                                            const Vec& x) const {
  return Q_inv_.Apply(xi - q_ + K_.Apply(x));
}

Vec QuadraticBilinearComponent::conj_jac_x_apply(const Vec&, const Vec&,
                                                 const Vec& d) const {
  return P_inv_.Apply(d);
}

Vec QuadraticBilinearComponent::conj_jac_y_apply(const Vec&, const Vec&,
                                                 const Vec& d) const {
  return Q_inv_.Apply(d);
}

Vec QuadraticBilinearComponent::conj_jac_x_diag(const Vec&, const Vec&) const {
  return P_inv_.Diagonal();
}

Vec QuadraticBilinearComponent::conj_jac_y_diag(const Vec&, const Vec&) const {
  return Q_inv_.Diagonal();
}

}  // namespace mmspp
