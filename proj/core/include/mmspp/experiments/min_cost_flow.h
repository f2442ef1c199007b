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

#ifndef MMSPP_EXPERIMENTS_MIN_COST_FLOW_H_
#define MMSPP_EXPERIMENTS_MIN_COST_FLOW_H_

#include "mmspp/experiments/flow_network.h"

namespace mmspp {

struct MinCostFlowResult {
  Vec x;
  // Node potentials (dual multipliers of the node balance rows).
  Vec potential;
  double q_tot = 0.0;
  int iterations = 0;
  // max |inflow - outflow - demand| over nodes.
  double imbalance = 0.0;
};

struct MinCostFlowOptions {
  double tol = 1e-10;
  int max_iters = 500;
};

// Solves
//   min_x sum_j wbar_j (x_j + y_j) x_j
//   s.t.  node balance with demand r_t at the sink, 0 <= x <= p - y
// with wbar the sample-average costs. The primal is recovered edgewise from
// node potentials; the concave piecewise-quadratic dual is maximized by a
// regularized semismooth Newton method with backtracking. Throws
// InfeasibleError when the attacked capacities cannot carry r_t.
MinCostFlowResult MinCostFlowEval(const FlowNetwork& net, const Vec& y,
                                  const MinCostFlowOptions& opt = {});

// sum_j wbar_j (x_j + y_j) x_j.
double ExpectedCost(const FlowNetwork& net, const Vec& x, const Vec& y);

}  // namespace mmspp

#endif  // MMSPP_EXPERIMENTS_MIN_COST_FLOW_H_
