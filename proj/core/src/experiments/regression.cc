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

#include "mmspp/experiments/regression.h"

#include <memory>
#include <vector>

#include "mmspp/rng.h"

namespace mmspp {

void RegressionConfig::Validate() const {
  if (n < 1 || m_dim < 1 || p < 1 || N < 1) {
    throw InvalidArgument("regression instance: dimensions must be >= 1");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("regression instance: sigma <= 0");
}

ProblemSpec GenRegression(const RegressionConfig& cfg) {
  cfg.Validate();
  const double inv_m = 1.0 / static_cast<double>(cfg.m_dim);
  const double lam = inv_m;
  // Shared across components; the conjugate oracles are linear solves
  // against lam I and (1/m) I.
  const StructuredMatrix P = StructuredMatrix::ScaledIdentity(cfg.n, lam);
  const StructuredMatrix Q = StructuredMatrix::ScaledIdentity(cfg.m_dim, inv_m);
  std::vector<ComponentPtr> comps;
  comps.reserve(static_cast<size_t>(cfg.N));
  for (Index i = 0; i < cfg.N; ++i) {
    CounterRng rng(cfg.seed, Stream::kProblem, 1, static_cast<std::uint64_t>(i));
    Mat k(cfg.m_dim, cfg.n);
    for (Index r = 0; r < cfg.m_dim; ++r)
      for (Index c = 0; c < cfg.n; ++c) k(r, c) = cfg.sigma * rng.Normal();
    comps.push_back(std::make_shared<QuadraticBilinearComponent>(
        P, Vec::Zero(cfg.n), Q, Vec::Zero(cfg.m_dim),
        StructuredMatrix::Dense(inv_m * k)));
  }
  CounterRng rng(cfg.seed, Stream::kProblem, 2, 0);
  Mat A(cfg.p, cfg.n), B(cfg.p, cfg.m_dim);
  for (Index r = 0; r < cfg.p; ++r)
    for (Index c = 0; c < cfg.n; ++c) A(r, c) = cfg.sigma * rng.Normal();
  for (Index r = 0; r < cfg.p; ++r)
    for (Index c = 0; c < cfg.m_dim; ++c) B(r, c) = cfg.sigma * rng.Normal();
  return MakeProblem(std::move(comps), Regularizer::Zero(), Regularizer::Zero(),
                     std::move(A), std::move(B), Vec::Zero(cfg.p));
}

}  // namespace mmspp
