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

#include "mmspp/experiments/attacks.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mmspp/rng.h"

namespace mmspp {

const char* AttackName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kSnmmspp: return "snmmspp";
    case AttackKind::kMgd: return "mgd";
    case AttackKind::kRandom: return "random";
    case AttackKind::kMaxCapacity: return "max_capacity";
    case AttackKind::kGreedy: return "greedy";
  }
  return "?";
}

AttackKind ParseAttack(const std::string& name) {
  for (AttackKind k : AllAttacks()) {
    if (name == AttackName(k)) return k;
  }
  throw InvalidArgument("unknown attack strategy '" + name + "'");
}

const std::vector<AttackKind>& AllAttacks() {
  static const std::vector<AttackKind> kAll = {
      AttackKind::kSnmmspp, AttackKind::kMgd, AttackKind::kRandom,
      AttackKind::kMaxCapacity, AttackKind::kGreedy};
  return kAll;
}

namespace {

void CheckBudget(const Vec& cap, double budget) {
  if (!(budget >= 0.0)) throw InvalidArgument("attack budget must be >= 0");
  if (budget > cap.sum() * (1.0 + 1e-12)) {
    throw InfeasibleError("attack budget exceeds total capacity");
  }
}

Vec FillInOrder(const Vec& cap, double budget, std::vector<Index> order) {
  Vec y = Vec::Zero(cap.size());
  double left = budget;
  for (Index e : order) {
    if (left <= 0.0) break;
    y(e) = std::min(cap(e), left);
    left -= y(e);
  }
  return y;
}

}  // namespace

Vec ProjectBudget(const Vec& v, const Vec& cap, double budget) {
  CheckDim(v.size(), cap.size(), "ProjectBudget");
  CheckBudget(cap, budget);
  if (v.size() == 0) return v;
  auto total = [&](double tau) {
    return (v.array() - tau).max(0.0).min(cap.array()).sum();
  };
  // total() is nonincreasing in tau.
  double lo = v.minCoeff() - cap.maxCoeff() - 1.0;
  double hi = v.maxCoeff() + 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (total(mid) > budget ? lo : hi) = mid;
  }
  Vec y = (v.array() - hi).max(0.0).min(cap.array()).matrix();
  // total(hi) <= budget; hand the rounding gap to coordinates with room,
  // interior ones first.
  double gap = budget - y.sum();
  for (int pass = 0; pass < 2 && gap > 0.0; ++pass) {
    for (Index e = 0; e < y.size() && gap > 0.0; ++e) {
      if (pass == 0 && !(y(e) > 0.0 && y(e) < cap(e))) continue;
      const double add = std::min(gap, cap(e) - y(e));
      y(e) += add;
      gap -= add;
    }
  }
  return y;
}

Vec RandomAttack(const FlowNetwork& net, std::uint64_t seed) {
  const Vec& cap = net.capacity;
  CheckBudget(cap, net.budget);
  const Index ne = net.E();
  CounterRng rng(seed, Stream::kAttack, 0, 0);
  Vec w(ne);
  for (Index e = 0; e < ne; ++e) w(e) = rng.Exponential();
  w /= w.sum();
  Vec y = Vec::Zero(ne);
  std::vector<bool> capped(static_cast<size_t>(ne), false);
  double left = net.budget;
  // Each round caps at least one coordinate or places the whole remainder.
  for (Index round = 0; round <= ne && left > 0.0; ++round) {
    double mass = 0.0;
    for (Index e = 0; e < ne; ++e) {
      if (!capped[static_cast<size_t>(e)]) mass += w(e);
    }
    if (mass <= 0.0) break;
    bool any_capped = false;
    for (Index e = 0; e < ne; ++e) {
      if (capped[static_cast<size_t>(e)]) continue;
      const double want = y(e) + left * w(e) / mass;
      if (want >= cap(e)) {
        capped[static_cast<size_t>(e)] = true;
        any_capped = true;
      }
    }
    if (!any_capped) {
      for (Index e = 0; e < ne; ++e) {
        if (!capped[static_cast<size_t>(e)]) y(e) += left * w(e) / mass;
      }
      break;
    }
    for (Index e = 0; e < ne; ++e) {
      if (capped[static_cast<size_t>(e)]) y(e) = cap(e);
    }
    left = net.budget - y.sum();
  }
  // Round-off repair; a no-op up to a few ulps.
  return ProjectBudget(y, cap, net.budget);
}

Vec MaxCapacityAttack(const FlowNetwork& net) {
  CheckBudget(net.capacity, net.budget);
  std::vector<Index> order(static_cast<size_t>(net.E()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return net.capacity(a) > net.capacity(b);
  });
  return FillInOrder(net.capacity, net.budget, std::move(order));
}

Vec GreedyAttack(const FlowNetwork& net) {
  CheckBudget(net.capacity, net.budget);
  const Vec w = net.MeanCost();
  std::vector<Index> order(static_cast<size_t>(net.E()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return w(a) < w(b); });
  return FillInOrder(net.capacity, net.budget, std::move(order));
}

Vec MgdAttack(const FlowNetwork& net, const MgdParams& prm) {
  if (prm.T < 1 || prm.K < 1 || !(prm.step_out > 0.0) || !(prm.step_in > 0.0)) {
    throw InvalidArgument("MGD parameters must be positive");
  }
  CheckBudget(net.capacity, net.budget);
  const Vec w = net.MeanCost();
  const Vec& cap = net.capacity;
  const ConservationRows cons = SelectConservationRows(net);
  const Mat inc = IncidenceMatrix(net);
  const Index nr = static_cast<Index>(cons.nodes.size()) + 1;
  Mat rows(nr, net.E());
  Vec rhs = Vec::Zero(nr);
  for (Index r = 0; r < nr - 1; ++r) rows.row(r) = inc.row(cons.nodes[static_cast<size_t>(r)]);
  rows.row(nr - 1) = inc.row(net.sink);
  rhs(nr - 1) = net.demand;

  Vec x = MinCostFlowEval(net, Vec::Zero(net.E())).x;
  Vec y = ProjectBudget(Vec::Constant(net.E(), net.budget / std::max<Index>(1, net.E())),
                        cap, net.budget);
  Vec mu = Vec::Zero(nr);
  for (int t = 0; t < prm.T; ++t) {
    for (int k = 0; k < prm.K; ++k) {
      const Vec gx = 2.0 * w.cwiseProduct(x) + w.cwiseProduct(y) +
                     rows.transpose() * mu;
      x = (x - prm.step_in * gx).cwiseMax(0.0).cwiseMin(cap - y);
      const Vec gy = w.cwiseProduct(x) - net.eta_y * y;
      y = ProjectBudget(y + prm.step_in * gy, cap, net.budget);
    }
    mu += prm.step_out * (rows * x - rhs);
    if (!x.allFinite() || !y.allFinite() || !mu.allFinite()) {
      throw DivergenceError("MGD: non-finite iterate at outer step " +
                            std::to_string(t));
    }
  }
  return ProjectBudget(y, cap, net.budget);
}

Vec SnmmsppAttack(const FlowNetwork& net, const SnmmsppAttackParams& prm,
                  RunReport* report) {
  CheckBudget(net.capacity, net.budget);
  // The budget row would force y = 0 through the solver anyway.
  if (net.budget == 0.0) return Vec::Zero(net.E());
  const ProblemSpec p = ReformulateWithSlacks(net);
  const Index ne = net.E();
  SolverConfig cfg;
  cfg.S = prm.S;
  cfg.m_inner = prm.m_inner;
  cfg.alpha = prm.alpha;
  cfg.sampler.mode = SamplingMode::kWithoutReplacement;
  cfg.sampler.batch_size = std::min<Index>(prm.batch, p.N());
  cfg.sampler.seed = prm.seed;
  cfg.delta.kind = DeltaSchedule::Kind::kConstant;
  cfg.delta.delta0 = 0.0;
  cfg.eps_floor = prm.eps_sub;
  cfg.project_each_outer = prm.project_each_outer;
  cfg.ssn = prm.ssn;

  const Vec x_cl = MinCostFlowEval(net, Vec::Zero(ne)).x;
  const Vec y0 = ProjectBudget(Vec::Constant(ne, net.budget / std::max<Index>(1, ne)),
                               net.capacity, net.budget);
  cfg.x0.resize(2 * ne);
  cfg.x0.head(ne) = x_cl;
  cfg.x0.tail(ne) = (net.capacity - x_cl - y0).cwiseMax(0.0);
  cfg.y0 = y0;
  auto [state, rep] = OuterLoop(p, cfg);
  if (report) *report = std::move(rep);
  return ProjectBudget(state.y.cwiseMax(0.0).cwiseMin(net.capacity),
                       net.capacity, net.budget);
}

AttackResult RelativeCostIncrease(const FlowNetwork& net, const Vec& y,
                                  const std::string& strategy,
                                  const MinCostFlowResult* clean) {
  AttackResult r;
  r.strategy = strategy;
  r.y = y;
  MinCostFlowResult cl = clean ? *clean : MinCostFlowEval(net, Vec::Zero(net.E()));
  r.x_clean = cl.x;
  r.q_clean = cl.q_tot;
  try {
    MinCostFlowResult at = MinCostFlowEval(net, y);
    r.x_attacked = at.x;
    r.q_attacked = at.q_tot;
    r.rho = (r.q_attacked - r.q_clean) / r.q_clean;
  } catch (const InfeasibleError&) {
    r.feasible = false;
    r.q_attacked = kInfinity;
    r.rho = kInfinity;
  }
  return r;
}

}  // namespace mmspp
