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

#include "mmspp/experiments/flow_network.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "mmspp/problem_io.h"
#include "mmspp/rng.h"

namespace mmspp {

using json = nlohmann::json;

void FlowNetworkConfig::Validate() const {
  if (n_nodes < 3) throw InvalidArgument("flow network: n_nodes must be >= 3");
  if (!(p_er > 0.0 && p_er < 1.0)) {
    throw InvalidArgument("flow network: p_er must lie in (0, 1)");
  }
  if (!(sigma >= 0.0)) throw InvalidArgument("flow network: sigma < 0");
  if (M < 1) throw InvalidArgument("flow network: M must be >= 1");
  if (!(budget_frac >= 0.0 && budget_frac <= 1.0)) {
    throw InvalidArgument("flow network: budget_frac must lie in [0, 1]");
  }
  if (!(eta_y > 0.0) || !(eps_z > 0.0)) {
    throw InvalidArgument("flow network: eta_y and eps_z must be positive");
  }
}

Vec FlowNetwork::MeanCost() const {
  if (cost_samples.rows() == 0) return base_cost;
  return cost_samples.colwise().mean().transpose();
}

void FlowNetwork::Validate() const {
  if (n_nodes < 2) throw InvalidArgument("flow network: too few nodes");
  if (source < 0 || source >= n_nodes || sink < 0 || sink >= n_nodes ||
      source == sink) {
    throw InvalidArgument("flow network: bad source/sink");
  }
  CheckDim(capacity.size(), E(), "capacity");
  CheckDim(base_cost.size(), E(), "base_cost");
  if (cost_samples.rows() > 0) CheckDim(cost_samples.cols(), E(), "samples");
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n_nodes || e.to < 0 || e.to >= n_nodes ||
        e.from == e.to) {
      throw InvalidArgument("flow network: bad edge endpoint");
    }
  }
  if (E() > 0 && !(capacity.minCoeff() > 0.0)) {
    throw InvalidArgument("flow network: capacities must be positive");
  }
  if (!(demand >= 0.0) || !(budget >= 0.0)) {
    throw InvalidArgument("flow network: negative demand or budget");
  }
  if (E() > 0 && budget > capacity.sum() + 1e-12) {
    throw InvalidArgument("flow network: budget exceeds total capacity");
  }
}

Mat SampleCosts(const Vec& base_cost, Index M, double sigma,
                std::uint64_t seed) {
  Mat s(M, base_cost.size());
  for (Index j = 0; j < base_cost.size(); ++j) {
    CounterRng rng(seed, Stream::kCosts, static_cast<std::uint64_t>(j), 0);
    for (Index m = 0; m < M; ++m) s(m, j) = base_cost(j) + sigma * rng.Normal();
  }
  return s;
}

double MaxFlow(Index n_nodes, const std::vector<Edge>& edges,
               const Vec& capacity, Index source, Index sink) {
  constexpr double kTol = 1e-9;
  CheckDim(capacity.size(), static_cast<Index>(edges.size()), "capacity");
  if (source == sink) throw InvalidArgument("MaxFlow: source == sink");
  // Residual graph: arc 2e is forward, 2e+1 is its reverse.
  const size_t ne = edges.size();
  std::vector<double> res(2 * ne);
  std::vector<Index> head(2 * ne);
  std::vector<std::vector<size_t>> adj(static_cast<size_t>(n_nodes));
  for (size_t e = 0; e < ne; ++e) {
    res[2 * e] = capacity(static_cast<Index>(e));
    res[2 * e + 1] = 0.0;
    head[2 * e] = edges[e].to;
    head[2 * e + 1] = edges[e].from;
    adj[static_cast<size_t>(edges[e].from)].push_back(2 * e);
    adj[static_cast<size_t>(edges[e].to)].push_back(2 * e + 1);
  }
  double total = 0.0;
  const size_t none = std::numeric_limits<size_t>::max();
  for (;;) {
    std::vector<size_t> via(static_cast<size_t>(n_nodes), none);
    std::vector<bool> seen(static_cast<size_t>(n_nodes), false);
    std::deque<Index> queue{source};
    seen[static_cast<size_t>(source)] = true;
    while (!queue.empty() && !seen[static_cast<size_t>(sink)]) {
      const Index u = queue.front();
      queue.pop_front();
      for (size_t a : adj[static_cast<size_t>(u)]) {
        const Index v = head[a];
        if (res[a] > kTol && !seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = true;
          via[static_cast<size_t>(v)] = a;
          queue.push_back(v);
        }
      }
    }
    if (!seen[static_cast<size_t>(sink)]) break;
    double push = kInfinity;
    for (Index v = sink; v != source;) {
      const size_t a = via[static_cast<size_t>(v)];
      push = std::min(push, res[a]);
      v = head[a ^ 1];
    }
    for (Index v = sink; v != source;) {
      const size_t a = via[static_cast<size_t>(v)];
      res[a] -= push;
      res[a ^ 1] += push;
      v = head[a ^ 1];
    }
    total += push;
  }
  return total;
}

double MaxFlow(const FlowNetwork& net) {
  return MaxFlow(net.n_nodes, net.edges, net.capacity, net.source, net.sink);
}

FlowNetwork GenFlowNetwork(const FlowNetworkConfig& cfg) {
  cfg.Validate();
  for (int attempt = 0; attempt < 100; ++attempt) {
    CounterRng rng(cfg.seed, Stream::kGraph, static_cast<std::uint64_t>(attempt),
                   0);
    FlowNetwork net;
    net.n_nodes = cfg.n_nodes;
    net.source = 0;
    net.sink = cfg.n_nodes - 1;
    for (Index i = 0; i < cfg.n_nodes; ++i) {
      for (Index j = 0; j < cfg.n_nodes; ++j) {
        if (i != j && rng.Uniform() < cfg.p_er) net.edges.push_back({i, j});
      }
    }
    const Index ne = net.E();
    net.capacity.resize(ne);
    net.base_cost.resize(ne);
    for (Index e = 0; e < ne; ++e) net.capacity(e) = rng.Uniform(1.0, 2.0);
    for (Index e = 0; e < ne; ++e) net.base_cost(e) = rng.Uniform(1.0, 2.0);
    const double mf = ne > 0 ? MaxFlow(net) : 0.0;
    if (!(mf > 0.0)) continue;
    net.demand = 0.5 * mf;
    net.budget = cfg.budget_frac * net.capacity.sum();
    net.eta_y = cfg.eta_y;
    net.eps_z = cfg.eps_z;
    net.sigma = cfg.sigma;
    net.p_er = cfg.p_er;
    net.seed = cfg.seed;
    net.attempt = attempt;
    net.cost_samples = SampleCosts(net.base_cost, cfg.M, cfg.sigma, cfg.seed);
    return net;
  }
  throw InvalidArgument(
      "flow network: no s-t connected graph in 100 attempts (p_er too small)");
}

Mat IncidenceMatrix(const FlowNetwork& net) {
  Mat n = Mat::Zero(net.n_nodes, net.E());
  for (Index e = 0; e < net.E(); ++e) {
    n(net.edges[static_cast<size_t>(e)].to, e) += 1.0;
    n(net.edges[static_cast<size_t>(e)].from, e) -= 1.0;
  }
  return n;
}

ConservationRows SelectConservationRows(const FlowNetwork& net) {
  // Union-find over the undirected skeleton.
  std::vector<Index> parent(static_cast<size_t>(net.n_nodes));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  for (const Edge& e : net.edges) {
    const Index a = find(e.from), b = find(e.to);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
  const Index rs = find(net.source), rt = find(net.sink);
  ConservationRows rows;
  std::vector<bool> dropped_in(static_cast<size_t>(net.n_nodes), false);
  for (Index v = 0; v < net.n_nodes; ++v) {
    if (v == net.source || v == net.sink) continue;
    const Index r = find(v);
    if (r != rs && r != rt && !dropped_in[static_cast<size_t>(r)]) {
      dropped_in[static_cast<size_t>(r)] = true;
      ++rows.dropped;
      continue;
    }
    rows.nodes.push_back(v);
  }
  return rows;
}

RowLayout ReformulationRows(const FlowNetwork& net) {
  RowLayout l;
  l.conservation = static_cast<Index>(SelectConservationRows(net).nodes.size());
  l.demand = 1;
  l.capacity = net.E();
  l.budget = 1;
  return l;
}

ProblemSpec ReformulateWithSlacks(const FlowNetwork& net) {
  net.Validate();
  if (net.M() < 1) throw InvalidArgument("reformulation needs cost samples");
  const Index ne = net.E();
  const Index nx = 2 * ne;
  std::vector<ComponentPtr> comps;
  comps.reserve(static_cast<size_t>(net.M()));
  const StructuredMatrix Q = StructuredMatrix::ScaledIdentity(ne, net.eta_y);
  for (Index m = 0; m < net.M(); ++m) {
    const Vec w = net.cost_samples.row(m).transpose();
    Vec pd(nx);
    pd.head(ne) = 2.0 * w;
    pd.tail(ne).setConstant(net.eps_z);
    comps.push_back(std::make_shared<QuadraticBilinearComponent>(
        StructuredMatrix::Diagonal(std::move(pd)), Vec::Zero(nx), Q,
        Vec::Zero(ne), StructuredMatrix::Diagonal(w, ne, nx)));
  }

  const ConservationRows cons = SelectConservationRows(net);
  const RowLayout layout = ReformulationRows(net);
  const Index rows = layout.Total();
  Mat A = Mat::Zero(rows, nx);
  Mat B = Mat::Zero(rows, ne);
  Vec c = Vec::Zero(rows);
  const Mat inc = IncidenceMatrix(net);
  Index r = 0;
  for (Index v : cons.nodes) A.row(r++).head(ne) = inc.row(v);
  A.row(r).head(ne) = inc.row(net.sink);
  c(r++) = -net.demand;
  for (Index e = 0; e < ne; ++e, ++r) {
    A(r, e) = 1.0;
    A(r, ne + e) = 1.0;
    B(r, e) = 1.0;
    c(r) = -net.capacity(e);
  }
  B.row(r).setOnes();
  c(r++) = -net.budget;

  Vec lo_x = Vec::Zero(nx), hi_x(nx);
  hi_x.head(ne) = net.capacity;
  hi_x.tail(ne).setConstant(kInfinity);
  return MakeProblem(std::move(comps), Regularizer::Box(lo_x, hi_x),
                     Regularizer::Box(Vec::Zero(ne), net.capacity),
                     std::move(A), std::move(B), std::move(c));
}

std::string NetworkToJson(const FlowNetwork& net, int indent) {
  json j;
  j["format"] = kFormatTag;
  j["kind"] = "flow_network";
  j["n_nodes"] = net.n_nodes;
  json edges = json::array();
  for (const Edge& e : net.edges) edges.push_back({e.from, e.to});
  j["edges"] = edges;
  j["capacity"] = std::vector<double>(net.capacity.data(),
                                      net.capacity.data() + net.capacity.size());
  j["base_cost"] = std::vector<double>(
      net.base_cost.data(), net.base_cost.data() + net.base_cost.size());
  j["source"] = net.source;
  j["sink"] = net.sink;
  j["demand"] = net.demand;
  j["budget"] = net.budget;
  j["eta_y"] = net.eta_y;
  j["eps_z"] = net.eps_z;
  j["sigma"] = net.sigma;
  j["p_er"] = net.p_er;
  j["M"] = net.M();
  j["seed"] = net.seed;
  j["attempt"] = net.attempt;
  return j.dump(indent);
}

FlowNetwork NetworkFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("network JSON: ") + e.what());
  }
  static const char* kKeys[] = {
      "format", "kind",  "n_nodes", "edges", "capacity", "base_cost",
      "source", "sink",  "demand",  "budget", "eta_y",   "eps_z",
      "sigma",  "p_er",  "M",       "seed",  "attempt"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return item.key() == k;
        }) == std::end(kKeys)) {
      throw InvalidArgument("network JSON: unknown key '" + item.key() + "'");
    }
  }
  try {
    if (j.at("format").get<std::string>() != kFormatTag) {
      throw InvalidArgument("network JSON: unsupported format tag");
    }
    if (j.at("kind").get<std::string>() != "flow_network") {
      throw InvalidArgument("network JSON: kind must be flow_network");
    }
    FlowNetwork net;
    net.n_nodes = j.at("n_nodes").get<Index>();
    for (const auto& e : j.at("edges")) {
      net.edges.push_back({e.at(0).get<Index>(), e.at(1).get<Index>()});
    }
    const auto cap = j.at("capacity").get<std::vector<double>>();
    const auto cost = j.at("base_cost").get<std::vector<double>>();
    net.capacity = Eigen::Map<const Vec>(cap.data(), static_cast<Index>(cap.size()));
    net.base_cost =
        Eigen::Map<const Vec>(cost.data(), static_cast<Index>(cost.size()));
    net.source = j.at("source").get<Index>();
    net.sink = j.at("sink").get<Index>();
    net.demand = j.at("demand").get<double>();
    net.budget = j.at("budget").get<double>();
    net.eta_y = j.at("eta_y").get<double>();
    net.eps_z = j.at("eps_z").get<double>();
    net.sigma = j.at("sigma").get<double>();
    net.p_er = j.at("p_er").get<double>();
    net.seed = j.at("seed").get<std::uint64_t>();
    net.attempt = j.value("attempt", 0);
    const Index M = j.at("M").get<Index>();
    net.cost_samples = SampleCosts(net.base_cost, M, net.sigma, net.seed);
    net.Validate();
    return net;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("network JSON: ") + e.what());
  }
}

}  // namespace mmspp
