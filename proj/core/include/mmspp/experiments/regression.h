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

#ifndef MMSPP_EXPERIMENTS_REGRESSION_H_
#define MMSPP_EXPERIMENTS_REGRESSION_H_

#include <cstdint>

#include "mmspp/problem.h"

namespace mmspp {

// Constrained linear-regression saddle problem
//   min_x max_y (1/m)[-||y||^2/2 - b'y + (1/N) sum_i y'K_i x] + (lam/2)||x||^2
//   s.t. A x + B y + c = 0
// with b = 0, c = 0, lam = 1/m and K_i, A, B entrywise N(0, sigma^2).
struct RegressionConfig {
  Index n = 20;
  Index m_dim = 20;
  Index p = 10;
  Index N = 50;
  double sigma = 0.01;
  std::uint64_t seed = 0;

  void Validate() const;
};

ProblemSpec GenRegression(const RegressionConfig& cfg);

}  // namespace mmspp

#endif  // MMSPP_EXPERIMENTS_REGRESSION_H_
