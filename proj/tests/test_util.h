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

#ifndef MMSPP_TESTS_TEST_UTIL_H_
#define MMSPP_TESTS_TEST_UTIL_H_

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mmspp/component.h"
#include "mmspp/problem.h"
#include "mmspp/rng.h"

namespace mmspp::testing {

inline Vec V(std::initializer_list<double> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Mat M1(double a) { return Mat::Constant(1, 1, a); }

inline Vec RandVec(CounterRng& rng, Index n, double s = 1.0) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = s * rng.Normal();
  return v;
}

inline Mat RandMat(CounterRng& rng, Index r, Index c, double s = 1.0) {
  Mat m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = s * rng.Normal();
  return m;
}

inline Mat RandSpd(CounterRng& rng, Index n, double shift = 1.0) {
  const Mat g = RandMat(rng, n, n);
  return g * g.transpose() / static_cast<double>(n) +
         shift * Mat::Identity(n, n);
}

// Diagonal-free quadratic component with dense blocks.
inline ComponentPtr Quad(const Mat& P, const Vec& p, const Mat& Q, const Vec& q,
                         const Mat& K) {
  return std::make_shared<QuadraticBilinearComponent>(
      StructuredMatrix::Dense(P), p, StructuredMatrix::Dense(Q), q,
      StructuredMatrix::Dense(K));
}

// g = x'x/2, h = y'y/2, f = 0 in one dimension each.
inline ComponentPtr Unit1D(double p = 0.0, double q = 0.0) {
  return Quad(M1(1.0), V({p}), M1(1.0), V({q}), M1(0.0));
}

// Random dense quadratic instance with N components and q rows.
inline ProblemSpec RandomQuadProblem(std::uint64_t seed, Index n, Index m,
                                     Index q, Index N, double coupling = 0.3) {
  CounterRng rng(seed, Stream::kProbe, 99, 0);
  std::vector<ComponentPtr> comps;
  for (Index i = 0; i < N; ++i) {
    comps.push_back(Quad(RandSpd(rng, n), RandVec(rng, n), RandSpd(rng, m),
                         RandVec(rng, m), RandMat(rng, m, n, coupling)));
  }
  return MakeProblem(std::move(comps), Regularizer::Zero(), Regularizer::Zero(),
                     RandMat(rng, q, n), RandMat(rng, q, m), RandVec(rng, q));
}

}  // namespace mmspp::testing

#endif  // MMSPP_TESTS_TEST_UTIL_H_
