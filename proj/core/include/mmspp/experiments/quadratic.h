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

#ifndef MMSPP_EXPERIMENTS_QUADRATIC_H_
#define MMSPP_EXPERIMENTS_QUADRATIC_H_

#include <cstdint>

#include "mmspp/problem.h"

namespace mmspp {

// Random instance of the quadratic-bilinear catalog:
//   P_i = I + hess_spread * S_i / ||S_i||,  S_i = G G' (G Gaussian)
//   Q_i likewise, K_i = coupling * G / ||G||,
//   A = a_scale * Gaussian / sqrt(n), B = b_scale * Gaussian / sqrt(m),
//   linear terms and c Gaussian with the given scales.
//
// The multiplier step descends in lambda, so it contracts only along rows
// where the B part outweighs the A part. The defaults keep B dominant.
struct QuadraticConfig {
  Index n = 20;
  Index m_dim = 20;
  Index q = 5;
  Index N = 50;
  double hess_spread = 0.2;
  double coupling = 0.1;
  double a_scale = 0.3;
  double b_scale = 3.0;
  double linear_scale = 1.0;
  double c_scale = 1.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

ProblemSpec GenQuadratic(const QuadraticConfig& cfg);

}  // namespace mmspp

#endif  // MMSPP_EXPERIMENTS_QUADRATIC_H_
