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

#ifndef MMSPP_EXPERIMENTS_ATTACKS_H_
#define MMSPP_EXPERIMENTS_ATTACKS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mmspp/driver.h"
#include "mmspp/experiments/flow_network.h"
#include "mmspp/experiments/min_cost_flow.h"
#include "mmspp/ssn.h"

namespace mmspp {

enum class AttackKind { kSnmmspp, kMgd, kRandom, kMaxCapacity, kGreedy };

const char* AttackName(AttackKind kind);
AttackKind ParseAttack(const std::string& name);
const std::vector<AttackKind>& AllAttacks();

// Euclidean projection onto {0 <= y <= cap, sum(y) = budget}. Throws
// InfeasibleError if budget > sum(cap).
Vec ProjectBudget(const Vec& v, const Vec& cap, double budget);

// Dirichlet(1, ..., 1) direction scaled to the budget; coordinates above
// their capacity are clipped and the excess is redistributed over the
// remaining coordinates in proportion to their weights.
Vec RandomAttack(const FlowNetwork& net, std::uint64_t seed);
// Fill edges to capacity by decreasing capacity.
Vec MaxCapacityAttack(const FlowNetwork& net);
// Fill edges to capacity by increasing average cost.
Vec GreedyAttack(const FlowNetwork& net);

struct MgdParams {
  int T = 100;
  int K = 5;
  double step_out = 0.5;
  double step_in = 0.5;
};

// Multiplier gradient method on the average-cost problem. Each outer step
// runs K rounds of (projected descent in x onto [0, p - y], projected
// ascent in y onto the budget set), then one ascent step on the multipliers
// of the node balance rows. The returned y is projected onto the budget set.
Vec MgdAttack(const FlowNetwork& net, const MgdParams& params);

struct SnmmsppAttackParams {
  int S = 200;
  int m_inner = 5;
  double alpha = 0.002;
  Index batch = 10;
  double eps_sub = 1e-10;
  bool project_each_outer = true;
  SsnParams ssn;
  std::uint64_t seed = 0;

  SnmmsppAttackParams() { ssn.rho = 0.99; }
};

// Runs the stochastic solver on ReformulateWithSlacks(net) from the clean
// flow and a uniform capped allocation, then projects y onto the budget
// set. `report`, if given, receives the run report.
Vec SnmmsppAttack(const FlowNetwork& net, const SnmmsppAttackParams& params,
                  RunReport* report = nullptr);

struct AttackResult {
  std::string strategy;
  Vec y;
  Vec x_clean;
  Vec x_attacked;
  double q_clean = 0.0;
  double q_attacked = 0.0;
  // +inf when the attacked network cannot carry the demand.
  double rho = 0.0;
  bool feasible = true;
};

// `clean`, if given, is the precomputed min-cost flow at y = 0.
AttackResult RelativeCostIncrease(const FlowNetwork& net, const Vec& y,
                                  const std::string& strategy = "",
                                  const MinCostFlowResult* clean = nullptr);

}  // namespace mmspp

#endif  // MMSPP_EXPERIMENTS_ATTACKS_H_
