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

#ifndef MMSPP_REGULARIZER_H_
#define MMSPP_REGULARIZER_H_

#include "mmspp/types.h"

namespace mmspp {

// Closed catalog of prox-friendly convex regularizers.
//
//   kZero   r(z) = 0
//   kL1     r(z) = w * ||z||_1
//   kBox    r(z) = indicator of {lo <= z <= hi}; bounds may be infinite
//   kSqL2   r(z) = (w / 2) * ||z||^2
class Regularizer {
 public:
  enum class Kind { kZero, kL1, kBox, kSqL2 };

  Regularizer() = default;

  static Regularizer Zero();
  static Regularizer L1(double weight);
  static Regularizer Box(Vec lo, Vec hi);
  static Regularizer SquaredL2(double weight);

  Kind kind() const { return kind_; }
  double weight() const { return weight_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

  // Box regularizers have a fixed dimension; other kinds accept any size.
  bool has_dimension() const { return kind_ == Kind::kBox; }
  Index dimension() const { return lo_.size(); }
  void CheckDimension(Index n, const char* what) const;

  // r(v); +inf outside the box.
  double Value(const Vec& v) const;
  bool InDomain(const Vec& v) const;

 private:
  Kind kind_ = Kind::kZero;
  double weight_ = 0.0;
  Vec lo_;
  Vec hi_;
};

const char* KindName(Regularizer::Kind kind);

// Diagonal element of the generalized Jacobian of a prox map. Every entry
// lies in [0, 1].
struct ProxJacobianElement {
  Vec diag;

  Vec Apply(const Vec& h) const { return diag.cwiseProduct(h); }
};

// argmin_z r(z) + ||v - z||^2 / (2 alpha).
Vec ProxEval(const Regularizer& r, double alpha, const Vec& v);

// min_z r(z) + ||v - z||^2 / (2 alpha); its gradient is (v - prox) / alpha.
double MoreauEnvelope(const Regularizer& r, double alpha, const Vec& v);

// Generalized Jacobian element of ProxEval at v. At kinks and box
// boundaries the inactive (zero) branch is taken.
ProxJacobianElement ProxJacobian(const Regularizer& r, double alpha,
                                 const Vec& v);

// prox_{t r*}(u) where r* is the Fenchel conjugate.
Vec ConjugateProxEval(const Regularizer& r, double t, const Vec& u);

// ||prox_{alpha r}(v) + alpha prox_{r*/alpha}(v / alpha) - v||.
double MoreauIdentityCheck(const Regularizer& r, double alpha, const Vec& v);

}  // namespace mmspp

#endif  // MMSPP_REGULARIZER_H_
