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

// Timing harnesses for the subsolver, one inner step, the projection and
// the min-cost flow evaluator.

#include <benchmark/benchmark.h>

#include "mmspp/driver.h"
#include "mmspp/experiments/flow_network.h"
#include "mmspp/experiments/min_cost_flow.h"
#include "mmspp/experiments/quadratic.h"
#include "mmspp/experiments/regression.h"
#include "mmspp/rng.h"
#include "mmspp/sampling.h"
#include "mmspp/ssn.h"

namespace {

using namespace mmspp;

Vec Gauss(CounterRng& rng, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.Normal();
  return v;
}

ProblemSpec Quad(Index dim) {
  QuadraticConfig qc;
  qc.n = dim;
  qc.m_dim = dim;
  qc.N = 100;
  return GenQuadratic(qc);
}

void BM_SolveSubproblem(benchmark::State& st) {
  const ProblemSpec p = Quad(st.range(0));
  const Index b = st.range(1);
  CounterRng rng(1, Stream::kProbe, 0, 0);
  BatchSample batch;
  for (Index i = 0; i < b; ++i) batch.push_back(i);
  const SubproblemSpec s = MakeSubproblem(p, Block::kX, Gauss(rng, p.n),
                                          Gauss(rng, p.m_dim), 0.5, batch,
                                          Vec::Zero(p.n), 1e-10, SsnParams{});
  for (auto _ : st) benchmark::DoNotOptimize(SolveSubproblem(s).xi.data());
}
BENCHMARK(BM_SolveSubproblem)->Args({20, 10})->Args({50, 10})->Args({20, 50});

void BM_InnerStep(benchmark::State& st) {
  RegressionConfig rc;
  rc.n = rc.m_dim = st.range(0);
  rc.p = rc.n / 2;
  rc.N = 1000;
  const ProblemSpec p = GenRegression(rc);
  SolverConfig cfg;
  cfg.alpha = 0.05;
  cfg.sampler.batch_size = 10;
  IterateState state = IterateState::Initial(p, Vec::Zero(p.n),
                                             Vec::Zero(p.m_dim), Vec::Zero(p.q));
  state.RefreshReference(p);
  std::uint64_t k = 0;
  for (auto _ : st) state = InnerStep(state, p, cfg, 0, k++, 1e-10);
}
BENCHMARK(BM_InnerStep)->Arg(20)->Arg(40);

void BM_Projection(benchmark::State& st) {
  QuadraticConfig qc;
  qc.n = qc.m_dim = st.range(0);
  qc.q = st.range(0) / 4;
  const ProblemSpec p = GenQuadratic(qc);
  const ConstraintProjector proj(p);
  CounterRng rng(2, Stream::kProbe, 0, 0);
  const Vec x = Gauss(rng, p.n), y = Gauss(rng, p.m_dim);
  for (auto _ : st) benchmark::DoNotOptimize(proj.Project(x, y).x.data());
}
BENCHMARK(BM_Projection)->Arg(20)->Arg(200);

void BM_MinCostFlow(benchmark::State& st) {
  FlowNetworkConfig fc;
  fc.M = 200;
  fc.p_er = 0.3;
  const FlowNetwork net = GenFlowNetwork(fc);
  const Vec y = Vec::Zero(net.E());
  for (auto _ : st) benchmark::DoNotOptimize(MinCostFlowEval(net, y).q_tot);
}
BENCHMARK(BM_MinCostFlow);

}  // namespace

BENCHMARK_MAIN();
