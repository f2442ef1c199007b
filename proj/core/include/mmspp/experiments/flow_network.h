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

#ifndef MMSPP_EXPERIMENTS_FLOW_NETWORK_H_
#define MMSPP_EXPERIMENTS_FLOW_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mmspp/problem.h"

namespace mmspp {

struct Edge {
  Index from = 0;
  Index to = 0;
};

struct FlowNetworkConfig {
  Index n_nodes = 10;
  double p_er = 0.3;
  double sigma = 0.01;
  Index M = 2000;
  // Attack budget as a fraction of the total capacity.
  double budget_frac = 0.1;
  double eta_y = 1e-5;
  double eps_z = 1e-8;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Directed Erdos-Renyi network with capacities and base costs in U[1, 2]
// and M Gaussian cost samples per edge (rows of `cost_samples`).
struct FlowNetwork {
  Index n_nodes = 0;
  std::vector<Edge> edges;
  Vec capacity;
  Vec base_cost;
  Mat cost_samples;  // M x |E|
  Index source = 0;
  Index sink = 0;
  double demand = 0.0;
  double budget = 0.0;
  double eta_y = 1e-5;
  double eps_z = 1e-8;
  double sigma = 0.0;
  double p_er = 0.0;
  std::uint64_t seed = 0;
  // Generation attempt that produced the graph (for regeneration replay).
  int attempt = 0;

  Index E() const { return static_cast<Index>(edges.size()); }
  Index M() const { return cost_samples.rows(); }
  // Sample-average cost per edge; the base costs when there are no samples.
  Vec MeanCost() const;
  void Validate() const;
};

// Regenerates with a fresh graph (bounded to 100 attempts) until the sink is
// reachable with positive max-flow. Sets demand = 0.5 * max-flow and
// budget = budget_frac * sum(capacity).
FlowNetwork GenFlowNetwork(const FlowNetworkConfig& cfg);

// Fills the Gaussian cost samples N(base_cost, sigma^2) from the seed.
Mat SampleCosts(const Vec& base_cost, Index M, double sigma, std::uint64_t seed);

// Edmonds-Karp on real capacities; residual arcs below 1e-9 are ignored.
double MaxFlow(Index n_nodes, const std::vector<Edge>& edges,
               const Vec& capacity, Index source, Index sink);
double MaxFlow(const FlowNetwork& net);

// Node-arc incidence: +1 at the head, -1 at the tail of each edge.
Mat IncidenceMatrix(const FlowNetwork& net);

// Rows kept by the reformulation: conservation rows of interior nodes,
// except that one row is dropped in every weakly connected component that
// holds neither source nor sink (those rows sum to zero).
struct ConservationRows {
  std::vector<Index> nodes;
  Index dropped = 0;
};
ConservationRows SelectConservationRows(const FlowNetwork& net);

// Minimax form of the interdiction problem. Min block X = (x, z) with
// slacks z; max block y. Component m is
//   g_m(X) = sum_j w^m_j x_j^2 + (eps_z / 2) ||z||^2
//   f_m(X, y) = sum_j w^m_j y_j x_j
//   h_m(y) = (eta_y / 2) ||y||^2
// phi = box [0, p] x [0, inf), psi = box [0, p]. Rows, in order:
// conservation, demand at the sink, x + y + z = p, sum(y) = budget.
ProblemSpec ReformulateWithSlacks(const FlowNetwork& net);

struct RowLayout {
  Index conservation = 0;
  Index demand = 0;
  Index capacity = 0;
  Index budget = 0;
  Index Total() const { return conservation + demand + capacity + budget; }
};
RowLayout ReformulationRows(const FlowNetwork& net);

// Edge list, capacities, base costs, and generation parameters. Cost samples
// are regenerated from the seed on load.
std::string NetworkToJson(const FlowNetwork& net, int indent = 1);
FlowNetwork NetworkFromJson(const std::string& text);

}  // namespace mmspp

#endif  // MMSPP_EXPERIMENTS_FLOW_NETWORK_H_
