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

#include "mmspp/experiments/quadratic.h"

#include <cmath>
#include <memory>
#include <vector>

#include "mmspp/rng.h"

namespace mmspp {
namespace {

Mat Gaussian(CounterRng& rng, Index r, Index c) {
  Mat g(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) g(i, j) = rng.Normal();
  return g;
}

Vec GaussianVec(CounterRng& rng, Index n, double scale) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = scale * rng.Normal();
  return v;
}

StructuredMatrix SpdPerturbation(CounterRng& rng, Index k, double spread) {
  const Mat g = Gaussian(rng, k, k);
  Mat s = g * g.transpose();
  s /= StructuredMatrix::Dense(s).SpectralNorm();
  Mat out = Mat::Identity(k, k) + spread * s;
  return StructuredMatrix::Dense(0.5 * (out + out.transpose()));
}

}  // namespace

void QuadraticConfig::Validate() const {
  if (n < 1 || m_dim < 1 || q < 1 || N < 1) {
    throw InvalidArgument("quadratic instance: dimensions must be >= 1");
  }
  if (!(hess_spread >= 0.0) || !(coupling >= 0.0)) {
    throw InvalidArgument("quadratic instance: negative scale");
  }
}

ProblemSpec GenQuadratic(const QuadraticConfig& cfg) {
  cfg.Validate();
  std::vector<ComponentPtr> comps;
  comps.reserve(static_cast<size_t>(cfg.N));
  for (Index i = 0; i < cfg.N; ++i) {
    CounterRng rng(cfg.seed, Stream::kProblem, 1, static_cast<std::uint64_t>(i));
    StructuredMatrix P = SpdPerturbation(rng, cfg.n, cfg.hess_spread);
    StructuredMatrix Q = SpdPerturbation(rng, cfg.m_dim, cfg.hess_spread);
    Mat g = Gaussian(rng, cfg.m_dim, cfg.n);
    const double gn = StructuredMatrix::Dense(g).SpectralNorm();
    StructuredMatrix K = StructuredMatrix::Dense(cfg.coupling * g / gn);
    Vec pv = GaussianVec(rng, cfg.n, cfg.linear_scale);
    Vec qv = GaussianVec(rng, cfg.m_dim, cfg.linear_scale);
    comps.push_back(std::make_shared<QuadraticBilinearComponent>(
        std::move(P), std::move(pv), std::move(Q), std::move(qv),
        std::move(K)));
  }
  CounterRng rng(cfg.seed, Stream::kProblem, 2, 0);
  Mat A = cfg.a_scale / std::sqrt(static_cast<double>(cfg.n)) *
          Gaussian(rng, cfg.q, cfg.n);
  Mat B = cfg.b_scale / std::sqrt(static_cast<double>(cfg.m_dim)) *
          Gaussian(rng, cfg.q, cfg.m_dim);
  Vec c = GaussianVec(rng, cfg.q, cfg.c_scale);
  return MakeProblem(std::move(comps), Regularizer::Zero(), Regularizer::Zero(),
                     std::move(A), std::move(B), std::move(c));
}

}  // namespace mmspp
