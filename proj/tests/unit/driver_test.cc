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

#include <gtest/gtest.h>

#include <cmath>

#include "mmspp/driver.h"
#include "mmspp/experiments/quadratic.h"
#include "test_util.h"

namespace mmspp {
namespace {

using testing::M1;
using testing::RandomQuadProblem;
using testing::RandVec;
using testing::Unit1D;
using testing::V;

ProblemSpec WithLipschitz(double lx, double ly) {
  ProblemSpec p;
  p.L_g_bar = lx;
  p.L_h_bar = ly;
  p.L_f_bar = 0.0;
  return p;
}

// Averaged blocks of a quadratic instance.
struct Averages {
  Mat P, Q, K;
  Vec p, q;
};

Averages Average(const ProblemSpec& pr) {
  Averages a{Mat::Zero(pr.n, pr.n), Mat::Zero(pr.m_dim, pr.m_dim),
             Mat::Zero(pr.m_dim, pr.n), Vec::Zero(pr.n), Vec::Zero(pr.m_dim)};
  for (const auto& c : pr.components) {
    const auto& q = dynamic_cast<const QuadraticBilinearComponent&>(*c);
    a.P += q.P().ToDense();
    a.Q += q.Q().ToDense();
    a.K += q.K().ToDense();
    a.p += q.p();
    a.q += q.q();
  }
  const double inv = 1.0 / static_cast<double>(pr.N());
  a.P *= inv, a.Q *= inv, a.K *= inv, a.p *= inv, a.q *= inv;
  return a;
}

TEST(AlphaBound, CollapsesForSingleInnerStep) {
  EXPECT_NEAR(TheoreticalAlphaBound(WithLipschitz(2, 2), 1, 7), 0.5, 1e-16);
}

TEST(AlphaBound, WorkedValue) {
  EXPECT_NEAR(TheoreticalAlphaBound(WithLipschitz(1, 1), 5, 10), 0.25, 1e-15);
}

TEST(AlphaBound, MonotoneInInnerStepsAndBatch) {
  const ProblemSpec p = WithLipschitz(1.3, 0.7);
  for (int m = 1; m < 10; ++m)
    EXPECT_GE(TheoreticalAlphaBound(p, m, 5), TheoreticalAlphaBound(p, m + 1, 5));
  for (Index b = 1; b < 20; ++b)
    EXPECT_LE(TheoreticalAlphaBound(p, 4, b), TheoreticalAlphaBound(p, 4, b + 1));
}

TEST(ToleranceSchedule, ZeroDeltaGivesFloor) {
  const ProblemSpec p = RandomQuadProblem(51, 3, 3, 1, 3);
  EXPECT_EQ(ToleranceSchedule(p, V({1, 2, 3}), V({1, 1, 1}), V({0}), 0.0, 1e-9),
            1e-9);
}

TEST(ToleranceSchedule, FloorAtKktPoint) {
  const ProblemSpec p = RandomQuadProblem(52, 3, 3, 1, 3);
  const SaddlePoint s = SolveKktReference(p);
  EXPECT_EQ(ToleranceSchedule(p, s.x_star, s.y_star, s.lambda_star, 0.5, 1e-8),
            1e-8);
}

TEST(ToleranceSchedule, MinOfResidualsScaled) {
  // g = x^2/2, h = y^2/2: residuals at lambda = 0 are x and y themselves.
  const ProblemSpec p = MakeProblem({Unit1D()}, Regularizer::Zero(),
                                    Regularizer::Zero(), M1(1), M1(2), V({0}));
  EXPECT_NEAR(ToleranceSchedule(p, V({2}), V({4}), V({0}), 0.1, 1e-12), 0.2,
              1e-16);
}

TEST(InnerStep, MultiplierArithmetic) {
  const ProblemSpec p = MakeProblem({Unit1D(0.5, -0.2)}, Regularizer::Zero(),
                                    Regularizer::Zero(), M1(1), M1(1), V({0}));
  SolverConfig cfg;
  cfg.alpha = 0.1;
  IterateState st = IterateState::Initial(p, V({0.3}), V({0.2}), V({0}));
  const IterateState nx = InnerStep(st, p, cfg, 0, 0, 1e-14);
  EXPECT_NEAR(nx.lambda(0), -0.1 * (nx.x(0) + nx.y(0)), 1e-17);
}

TEST(InnerStep, FullBatchEqualsDeterministicImplicitStep) {
  const ProblemSpec p = RandomQuadProblem(53, 5, 4, 2, 6);
  const Averages a = Average(p);
  SolverConfig cfg;
  cfg.alpha = 0.3;
  cfg.sampler.batch_size = 6;
  CounterRng rng(1, Stream::kProbe, 4, 0);
  IterateState st = IterateState::Initial(p, RandVec(rng, 5), RandVec(rng, 4),
                                          RandVec(rng, 2));
  for (int k = 0; k < 5; ++k) {
    const IterateState nx = InnerStep(st, p, cfg, 0, k, 1e-14);
    const double al = cfg.alpha;
    const Vec y = (Mat::Identity(4, 4) + al * a.Q)
                      .ldlt()
                      .solve(st.y + al * (a.K * st.x - a.q + p.B.transpose() * st.lambda));
    const Vec x = (Mat::Identity(5, 5) + al * a.P)
                      .ldlt()
                      .solve(st.x - al * (a.p + a.K.transpose() * y +
                                          p.A.transpose() * st.lambda));
    const Vec l = st.lambda - al * (p.A * x + p.B * y + p.c);
    EXPECT_LE((nx.y - y).norm(), 1e-12);
    EXPECT_LE((nx.x - x).norm(), 1e-12);
    EXPECT_LE((nx.lambda - l).norm(), 1e-12);
    st = nx;
    st.RefreshReference(p);
  }
}

TEST(InnerStep, SaddlePointIsFixed) {
  const ProblemSpec p = RandomQuadProblem(54, 4, 4, 2, 8);
  const SaddlePoint s = SolveKktReference(p);
  SolverConfig cfg;
  cfg.alpha = 0.2;
  cfg.sampler.batch_size = 3;
  IterateState st = IterateState::Initial(p, s.x_star, s.y_star, s.lambda_star);
  for (int k = 0; k < 5; ++k) {
    const IterateState nx = InnerStep(st, p, cfg, 0, k, 1e-13);
    EXPECT_LE((nx.x - s.x_star).norm() + (nx.y - s.y_star).norm() +
                  (nx.lambda - s.lambda_star).norm(),
              1e-8);
  }
}

TEST(Projection, SymmetricOneDimensional) {
  const ProblemSpec p = MakeProblem({Unit1D()}, Regularizer::Zero(),
                                    Regularizer::Zero(), M1(1), M1(1), V({0}));
  const ProjectionResult r = ProjectOntoC(p, V({1}), V({1}));
  EXPECT_NEAR(r.zeta(0), 1.0, 1e-15);
  EXPECT_NEAR(r.x(0), 0.0, 1e-15);
  EXPECT_NEAR(r.y(0), 0.0, 1e-15);
}

TEST(Projection, FeasibleInputUnchanged) {
  const ProblemSpec p = RandomQuadProblem(55, 4, 3, 2, 2);
  CounterRng rng(2, Stream::kProbe, 4, 0);
  const ProjectionResult a = ProjectOntoC(p, RandVec(rng, 4), RandVec(rng, 3));
  const ProjectionResult b = ProjectOntoC(p, a.x, a.y);
  EXPECT_LE(b.zeta.norm(), 1e-13);
  EXPECT_LE((b.x - a.x).norm() + (b.y - a.y).norm(), 1e-13);
}

TEST(Projection, MinimalAgainstNullspaceSamples) {
  const ProblemSpec p = RandomQuadProblem(56, 4, 3, 2, 2);
  Mat AB(2, 7);
  AB << p.A, p.B;
  const Mat null = Eigen::FullPivLU<Mat>(AB).kernel();
  CounterRng rng(3, Stream::kProbe, 4, 0);
  for (int t = 0; t < 20; ++t) {
    const Vec x = RandVec(rng, 4, 2), y = RandVec(rng, 3, 2);
    const ProjectionResult r = ProjectOntoC(p, x, y);
    EXPECT_LE((p.A * r.x + p.B * r.y + p.c).norm(), 1e-10);
    Vec w(7);
    w << x - r.x, y - r.y;
    EXPECT_LE((w.head(4) - p.A.transpose() * r.zeta).norm(), 1e-12);
    const double d0 = w.squaredNorm();
    Vec base(7);
    base << r.x, r.y;
    for (int j = 0; j < 100; ++j) {
      const Vec u = base + null * RandVec(rng, null.cols());
      Vec xy(7);
      xy << x, y;
      EXPECT_LE(d0, (xy - u).squaredNorm() + 1e-12);
    }
  }
}

TEST(Projection, RankDeficientRowsRejected) {
  const ProblemSpec p = MakeProblem({Unit1D()}, Regularizer::Zero(),
                                    Regularizer::Zero(), Mat::Ones(2, 1),
                                    Mat::Ones(2, 1), V({0, 0}));
  EXPECT_THROW(ConstraintProjector{p}, RankDeficientError);
}

TEST(Rate, TheoreticalRatioValues) {
  EXPECT_NEAR(TheoreticalRatio(0.25, 1.0), 2.0 / 3.0, 1e-16);
  EXPECT_LT(TheoreticalRatio(0.25, 1e12), 1e-11);
}

TEST(Rate, FitTailRatioOnGeometricSequence) {
  std::vector<double> d;
  for (int s = 0; s <= 30; ++s) d.push_back(3.0 * std::pow(0.7, s));
  EXPECT_NEAR(FitTailRatio(d), 0.7, 1e-12);
  EXPECT_NEAR(LogLinearSlope(d), std::log(0.7), 1e-12);
  EXPECT_TRUE(std::isnan(FitTailRatio({1.0})));
}

SolverConfig DeskConfig(std::uint64_t seed) {
  SolverConfig cfg;
  cfg.S = 25;
  cfg.m_inner = 5;
  cfg.sampler.batch_size = 10;
  cfg.sampler.seed = seed;
  cfg.delta.kind = DeltaSchedule::Kind::kGeometric;
  cfg.delta.delta0 = 1.0;
  cfg.delta.ratio = 0.5;
  cfg.eps_floor = 1e-14;
  return cfg;
}

TEST(OuterLoop, ByteStableReports) {
  const ProblemSpec p = GenQuadratic(QuadraticConfig{});
  SolverConfig cfg = DeskConfig(4);
  cfg.S = 5;
  cfg.alpha = 0.1;
  const auto a = OuterLoop(p, cfg).second.ToCsv();
  const auto b = OuterLoop(p, cfg).second.ToCsv();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), kRunCsvHeader);
}

TEST(OuterLoop, ZeroToleranceFullBatchMeetsRate) {
  QuadraticConfig qc;
  qc.N = 10;
  const ProblemSpec p = GenQuadratic(qc);
  SolverConfig cfg = DeskConfig(1);
  cfg.sampler.batch_size = 10;
  cfg.delta = DeltaSchedule{};
  cfg.alpha = 0.9 * TheoreticalAlphaBound(p, cfg.m_inner, 10);
  cfg.reference = SolveKktReference(p);
  const RunReport r = OuterLoop(p, cfg).second;
  EXPECT_EQ(r.rows.size(), 26u);
  EXPECT_LE(r.fitted_ratio, r.theoretical_ratio + 0.05);
}

TEST(OuterLoop, LimitMatchesKktReference) {
  const ProblemSpec p = GenQuadratic(QuadraticConfig{});
  SolverConfig cfg = DeskConfig(2);
  cfg.S = 40;
  cfg.alpha = 0.9 * TheoreticalAlphaBound(p, cfg.m_inner, 10);
  const IterateState st = OuterLoop(p, cfg).first;
  const SaddlePoint s = SolveKktReference(p);
  EXPECT_LE((st.x_ref - s.x_star).norm(), 1e-6);
  EXPECT_LE((st.y_ref - s.y_star).norm(), 1e-6);
  EXPECT_LE((st.lambda_ref - s.lambda_star).norm(), 1e-6);
}

TEST(OuterLoop, SingleComponentFollowsDeterministicPath) {
  const ProblemSpec p = RandomQuadProblem(57, 3, 3, 1, 1);
  const Averages a = Average(p);
  SolverConfig cfg;
  cfg.S = 4;
  cfg.m_inner = 3;
  cfg.alpha = 0.2;
  cfg.sampler.batch_size = 1;
  cfg.eps_floor = 1e-14;
  Vec x = Vec::Zero(3), y = Vec::Zero(3), l = Vec::Zero(1);
  double worst = 0.0;
  cfg.on_step = [&](std::uint64_t, std::uint64_t, const IterateState& st) {
    const double al = cfg.alpha;
    y = (Mat::Identity(3, 3) + al * a.Q)
            .ldlt()
            .solve(y + al * (a.K * x - a.q + p.B.transpose() * l));
    x = (Mat::Identity(3, 3) + al * a.P)
            .ldlt()
            .solve(x - al * (a.p + a.K.transpose() * y + p.A.transpose() * l));
    l = l - al * (p.A * x + p.B * y + p.c);
    worst = std::max(worst, (st.x - x).norm() + (st.y - y).norm() +
                                (st.lambda - l).norm());
  };
  OuterLoop(p, cfg);
  EXPECT_LE(worst, 1e-10);
}

TEST(OuterLoop, InvalidConfigRejected) {
  const ProblemSpec p = RandomQuadProblem(58, 2, 2, 1, 3);
  SolverConfig cfg;
  cfg.alpha = -1;
  EXPECT_THROW(OuterLoop(p, cfg), InvalidArgument);
  cfg.alpha = 0.1;
  cfg.sampler.batch_size = 4;
  EXPECT_THROW(OuterLoop(p, cfg), InvalidArgument);
}

}  // namespace
}  // namespace mmspp
