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

#include "mmspp/regularizer.h"

#include <cmath>
#include <utility>

namespace mmspp {
namespace {

void CheckAlpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("prox step must be positive and finite");
  }
}

}  // namespace

Regularizer Regularizer::Zero() { return Regularizer(); }

Regularizer Regularizer::L1(double weight) {
  if (!(weight >= 0.0)) throw InvalidArgument("L1 weight must be >= 0");
  Regularizer r;
  r.kind_ = Kind::kL1;
  r.weight_ = weight;
  return r;
}

Regularizer Regularizer::Box(Vec lo, Vec hi) {
  CheckDim(hi.size(), lo.size(), "Regularizer::Box bounds");
  for (Index j = 0; j < lo.size(); ++j) {
    if (std::isnan(lo[j]) || std::isnan(hi[j]) || lo[j] > hi[j]) {
      throw InvalidArgument("Regularizer::Box requires lo <= hi");
    }
  }
  Regularizer r;
  r.kind_ = Kind::kBox;
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

Regularizer Regularizer::SquaredL2(double weight) {
  if (!(weight >= 0.0)) throw InvalidArgument("SquaredL2 weight must be >= 0");
  Regularizer r;
  r.kind_ = Kind::kSqL2;
  r.weight_ = weight;
  return r;
}

void Regularizer::CheckDimension(Index n, const char* what) const {
  if (has_dimension()) CheckDim(n, dimension(), what);
}

bool Regularizer::InDomain(const Vec& v) const {
  if (kind_ != Kind::kBox) return true;
  CheckDimension(v.size(), "Regularizer::InDomain");
  return (v.array() >= lo_.array()).all() && (v.array() <= hi_.array()).all();
}

double Regularizer::Value(const Vec& v) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kL1:
      return weight_ * v.lpNorm<1>();
    case Kind::kBox:
      return InDomain(v) ? 0.0 : kInfinity;
    case Kind::kSqL2:
      return 0.5 * weight_ * v.squaredNorm();
  }
  return 0.0;
}

const char* KindName(Regularizer::Kind kind) {
  switch (kind) {
    case Regularizer::Kind::kZero:
      return "zero";
    case Regularizer::Kind::kL1:
      return "l1";
    case Regularizer::Kind::kBox:
      return "box";
    case Regularizer::Kind::kSqL2:
      return "sql2";
  }
  return "?";
}

Vec ProxEval(const Regularizer& r, double alpha, const Vec& v) {
  CheckAlpha(alpha);
  r.CheckDimension(v.size(), "ProxEval");
  switch (r.kind()) {
    case Regularizer::Kind::kZero:
      return v;
    case Regularizer::Kind::kL1: {
      const double t = alpha * r.weight();
      return (v.array().abs() - t).max(0.0) * v.array().sign();
    }
    case Regularizer::Kind::kBox:
      return v.cwiseMax(r.lo()).cwiseMin(r.hi());
    case Regularizer::Kind::kSqL2:
      return v / (1.0 + alpha * r.weight());
  }
  return v;
}

double MoreauEnvelope(const Regularizer& r, double alpha, const Vec& v) {
  const Vec p = ProxEval(r, alpha, v);
  return r.Value(p) + (v - p).squaredNorm() / (2.0 * alpha);
}

ProxJacobianElement ProxJacobian(const Regularizer& r, double alpha,
                                 const Vec& v) {
  CheckAlpha(alpha);
  r.CheckDimension(v.size(), "ProxJacobian");
  ProxJacobianElement u;
  switch (r.kind()) {
    case Regularizer::Kind::kZero:
      u.diag = Vec::Ones(v.size());
      break;
    case Regularizer::Kind::kL1: {
      const double t = alpha * r.weight();
      u.diag = (v.array().abs() > t).cast<double>();
      break;
    }
    case Regularizer::Kind::kBox:
      u.diag = ((v.array() > r.lo().array()) && (v.array() < r.hi().array()))
                   .cast<double>();
      break;
    case Regularizer::Kind::kSqL2:
      u.diag = Vec::Constant(v.size(), 1.0 / (1.0 + alpha * r.weight()));
      break;
  }
  return u;
}

Vec ConjugateProxEval(const Regularizer& r, double t, const Vec& u) {
  CheckAlpha(t);
  r.CheckDimension(u.size(), "ConjugateProxEval");
  switch (r.kind()) {
    case Regularizer::Kind::kZero:
      // r* is the indicator of {0}.
      return Vec::Zero(u.size());
    case Regularizer::Kind::kL1:
      // r* is the indicator of the inf-norm ball of radius w.
      return u.cwiseMax(-r.weight()).cwiseMin(r.weight());
    case Regularizer::Kind::kBox: {
      // r* is the support function of the box.
      const Vec s = u / t;
      return u - t * s.cwiseMax(r.lo()).cwiseMin(r.hi());
    }
    case Regularizer::Kind::kSqL2:
      return r.weight() * u / (r.weight() + t);
  }
  return u;
}

double MoreauIdentityCheck(const Regularizer& r, double alpha, const Vec& v) {
  const Vec p = ProxEval(r, alpha, v);
  const Vec q = ConjugateProxEval(r, 1.0 / alpha, v / alpha);
  return (p + alpha * q - v).norm();
}

}  // namespace mmspp
