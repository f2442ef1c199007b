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

#include "mmspp/experiments/min_cost_flow.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

namespace mmspp {
namespace {

struct DualEval {
  Vec x;
  Vec active;  // 1 where the edge flow is strictly inside its box
  double value = 0.0;
  Vec grad;
};

DualEval Evaluate(const FlowNetwork& net, const Vec& w, const Vec& y,
                  const Vec& upper, const Vec& d, const Vec& pi) {
  const Index ne = net.E();
  DualEval out;
  out.x.resize(ne);
  out.active.resize(ne);
  out.value = pi.dot(d);
  out.grad = d;
  for (Index e = 0; e < ne; ++e) {
    const Edge& ed = net.edges[static_cast<size_t>(e)];
    const double delta = pi(ed.to) - pi(ed.from);
    const double raw = (delta - w(e) * y(e)) / (2.0 * w(e));
    const double xe = std::clamp(raw, 0.0, upper(e));
    out.x(e) = xe;
    out.active(e) = (raw > 0.0 && raw < upper(e)) ? 1.0 : 0.0;
    out.value += w(e) * xe * xe + (w(e) * y(e) - delta) * xe;
    out.grad(ed.to) -= xe;
    out.grad(ed.from) += xe;
  }
  return out;
}

}  // namespace

double ExpectedCost(const FlowNetwork& net, const Vec& x, const Vec& y) {
  const Vec w = net.MeanCost();
  return (w.array() * (x + y).array() * x.array()).sum();
}

MinCostFlowResult MinCostFlowEval(const FlowNetwork& net, const Vec& y,
                                  const MinCostFlowOptions& opt) {
  net.Validate();
  CheckDim(y.size(), net.E(), "attack vector");
  const double slack = 1e-12;
  if ((y.array() < -slack).any() || ((y - net.capacity).array() > slack).any()) {
    throw InvalidArgument("min-cost flow: attack outside [0, p]");
  }
  const Vec upper = (net.capacity - y).cwiseMax(0.0);
  const double reach = MaxFlow(net.n_nodes, net.edges, upper, net.source,
                               net.sink);
  if (reach < net.demand * (1.0 - 1e-9) - 1e-12) {
    throw InfeasibleError("min-cost flow: attacked network carries " +
                          std::to_string(reach) + " < demand " +
                          std::to_string(net.demand));
  }
  const Vec w = net.MeanCost();
  const Index nn = net.n_nodes;
  Vec d = Vec::Zero(nn);
  d(net.sink) = net.demand;
  d(net.source) = -net.demand;
  const double tol = opt.tol * std::max(1.0, net.demand);

  Vec pi = Vec::Zero(nn);
  DualEval cur = Evaluate(net, w, y, upper, d, pi);
  MinCostFlowResult res;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    const double gnorm = cur.grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= tol) break;
    // Weighted Laplacian over the interior edges, plus Levenberg damping.
    Mat L = Mat::Zero(nn, nn);
    for (Index e = 0; e < net.E(); ++e) {
      if (cur.active(e) == 0.0) continue;
      const Edge& ed = net.edges[static_cast<size_t>(e)];
      const double c = 1.0 / (2.0 * w(e));
      L(ed.to, ed.to) += c;
      L(ed.from, ed.from) += c;
      L(ed.to, ed.from) -= c;
      L(ed.from, ed.to) -= c;
    }
    const double reg = std::max(1e-12, 1e-3 * std::min(1.0, gnorm));
    L.diagonal().array() += reg;
    const Vec step = L.llt().solve(cur.grad);
    const double slope = cur.grad.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 200; ++ls, t *= 0.5) {
      const Vec trial = pi + t * step;
      DualEval cand = Evaluate(net, w, y, upper, d, trial);
      const double margin =
          64.0 * 2.2e-16 * (std::abs(cur.value) + std::abs(cand.value) + 1.0);
      if (cand.value >= cur.value + 1e-4 * t * slope - margin) {
        pi = trial;
        cur = std::move(cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  res.x = cur.x;
  res.potential = pi;
  res.iterations = it;
  res.imbalance = cur.grad.lpNorm<Eigen::Infinity>();
  if (!(res.imbalance <= 1e3 * tol)) {
    throw NonConvergenceError("min-cost flow: dual Newton stalled at imbalance " +
                              std::to_string(res.imbalance));
  }
  res.q_tot = ExpectedCost(net, res.x, y);
  return res;
}

}  // namespace mmspp
