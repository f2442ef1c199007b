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

#include "mmspp/ssn.h"
#include "test_util.h"

namespace mmspp {
namespace {

using testing::M1;
using testing::Quad;
using testing::RandMat;
using testing::RandomQuadProblem;
using testing::RandSpd;
using testing::RandVec;
using testing::Unit1D;
using testing::V;

ProblemSpec UnitProblem() {
  return MakeProblem({Unit1D()}, Regularizer::Zero(), Regularizer::Zero(),
                     M1(1), M1(1), V({0}));
}

SubproblemSpec UnitSub(const ProblemSpec& p) {
  return MakeSubproblem(p, Block::kX, V({1}), V({0}), 1.0, {0}, V({0}), 1e-12,
                        SsnParams{});
}

// Dense oracle for quadratic components and a zero regularizer: the primal
// update solves x = anchor - drift - (alpha / b) sum_i grad_phi_i(x), then
// xi_i = grad_phi_i(x).
Vec DirectXi(const SubproblemSpec& s) {
  const ProblemSpec& p = *s.problem;
  const Index d = s.dim();
  const double c = s.alpha / static_cast<double>(s.b());
  Mat H = Mat::Identity(d, d);
  Vec rhs = s.anchor - s.drift;
  for (Index i : s.batch) {
    const auto& q = dynamic_cast<const QuadraticBilinearComponent&>(
        *p.components[static_cast<size_t>(i)]);
    if (s.block == Block::kX) {
      H += c * q.P().ToDense();
      rhs -= c * (q.p() + q.K().ToDense().transpose() * s.other_point);
    } else {
      H += c * q.Q().ToDense();
      rhs -= c * (q.q() - q.K().ToDense() * s.other_point);
    }
  }
  const Vec u = H.ldlt().solve(rhs);
  Vec xi(s.size());
  for (Index k = 0; k < s.b(); ++k) {
    const auto& comp = *p.components[static_cast<size_t>(s.batch[k])];
    xi.segment(k * d, d) = s.block == Block::kX ? comp.grad_phi_x(u, s.other_point)
                                                : comp.grad_phi_y(s.other_point, u);
  }
  return xi;
}

SubproblemSpec RandomSub(const ProblemSpec& p, CounterRng& rng, Block block,
                         Index b, double alpha, double eps = 1e-12) {
  BatchSample batch;
  for (Index i = 0; i < b; ++i)
    batch.push_back(static_cast<Index>(rng.UniformInt(static_cast<std::uint64_t>(p.N()))));
  const Index d = block == Block::kX ? p.n : p.m_dim;
  const Index o = block == Block::kX ? p.m_dim : p.n;
  return MakeSubproblem(p, block, RandVec(rng, d), RandVec(rng, o), alpha,
                        batch, RandVec(rng, d, 0.1), eps, SsnParams{});
}

TEST(ResidualF, OneDimensionalClosedForm) {
  const ProblemSpec p = UnitProblem();
  const SubproblemSpec s = UnitSub(p);
  for (double xi : {-1.0, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(ResidualF(V({xi}), s)(0), 2 * xi - 1, 1e-15);
  }
  EXPECT_EQ(ResidualF(V({0.5}), s)(0), 0.0);
}

TEST(ResidualF, VanishesAtDirectSolution) {
  const ProblemSpec p = RandomQuadProblem(31, 6, 5, 2, 10);
  CounterRng rng(1, Stream::kProbe, 3, 0);
  for (Block blk : {Block::kX, Block::kY}) {
    const SubproblemSpec s = RandomSub(p, rng, blk, 4, 0.7);
    EXPECT_LE(ResidualF(DirectXi(s), s).norm(), 1e-10);
  }
}

TEST(ResidualF, DriftShiftMovesOnlyProxTerm) {
  const ProblemSpec p = RandomQuadProblem(32, 3, 3, 1, 4);
  CounterRng rng(2, Stream::kProbe, 3, 0);
  SubproblemSpec s = RandomSub(p, rng, Block::kX, 2, 0.5);
  const Vec xi = RandVec(rng, s.size());
  const Vec f0 = ResidualF(xi, s);
  const Vec delta = RandVec(rng, 3);
  s.drift += delta;
  const Vec f1 = ResidualF(xi, s);
  // Zero regularizer: prox is the identity, so each block gains +delta.
  for (Index i = 0; i < 2; ++i)
    EXPECT_LE((f1.segment(3 * i, 3) - f0.segment(3 * i, 3) - delta).norm(), 1e-13);
}

TEST(ObjectiveI, OneDimensionalValue) {
  const ProblemSpec p = UnitProblem();
  const SubproblemSpec s = UnitSub(p);
  EXPECT_NEAR(ObjectiveI(V({0.5}), s), 0.25, 1e-15);
  EXPECT_NEAR(ObjectiveI(V({0.0}), s), 0.5, 1e-15);
}

TEST(ObjectiveI, GradientIsResidual) {
  ProblemSpec p = RandomQuadProblem(33, 4, 3, 2, 6);
  p.phi = Regularizer::L1(0.3);
  p.psi = Regularizer::Box(Vec::Constant(3, -0.5), Vec::Constant(3, 0.5));
  CounterRng rng(3, Stream::kProbe, 3, 0);
  for (int t = 0; t < 50; ++t) {
    const SubproblemSpec s =
        RandomSub(p, rng, t % 2 ? Block::kX : Block::kY, 3, 0.4);
    const Vec xi = RandVec(rng, s.size());
    const Vec F = ResidualF(xi, s);
    Vec fd(xi.size());
    for (Index j = 0; j < xi.size(); ++j) {
      const double h = 1e-5 * (1 + std::abs(xi(j)));
      Vec a = xi, b = xi;
      a(j) += h;
      b(j) -= h;
      fd(j) = (ObjectiveI(a, s) - ObjectiveI(b, s)) / (2 * h);
    }
    EXPECT_LE((fd - F).norm(), 1e-6 * F.norm());
  }
}

TEST(ResidualF, StronglyMonotone) {
  const ProblemSpec p = RandomQuadProblem(34, 4, 4, 2, 5);
  CounterRng rng(4, Stream::kProbe, 3, 0);
  for (int t = 0; t < 50; ++t) {
    const SubproblemSpec s = RandomSub(p, rng, Block::kX, 3, 0.5);
    const Vec a = RandVec(rng, s.size()), b = RandVec(rng, s.size());
    EXPECT_GE((ResidualF(a, s) - ResidualF(b, s)).dot(a - b),
              p.mu_star_x * (a - b).squaredNorm() * (1 - 1e-12));
  }
}

TEST(JacobianW, UnitCaseIsTwoIdentity) {
  const ProblemSpec p = UnitProblem();
  const SubproblemSpec s = UnitSub(p);
  EXPECT_EQ(JacobianW(V({0.3}), s).ToDense(), Mat::Constant(1, 1, 2.0));
}

TEST(JacobianW, PositiveDefiniteWithMuStar) {
  ProblemSpec p = RandomQuadProblem(35, 5, 3, 2, 6);
  p.phi = Regularizer::L1(0.2);
  CounterRng rng(5, Stream::kProbe, 3, 0);
  const SubproblemSpec s = RandomSub(p, rng, Block::kX, 3, 0.8);
  const JacobianW W(RandVec(rng, s.size()), s);
  const Mat Wd = W.ToDense();
  EXPECT_LE((Wd - Wd.transpose()).norm(), 1e-13);
  for (int t = 0; t < 100; ++t) {
    const Vec h = RandVec(rng, s.size());
    EXPECT_GE(h.dot(W.Apply(h)), p.mu_star_x * h.squaredNorm() * (1 - 1e-12));
  }
}

TEST(JacobianW, DirectionalDerivative) {
  const ProblemSpec p = RandomQuadProblem(36, 4, 3, 2, 6);
  CounterRng rng(6, Stream::kProbe, 3, 0);
  const SubproblemSpec s = RandomSub(p, rng, Block::kY, 3, 0.8);
  const Vec xi = RandVec(rng, s.size()), d = RandVec(rng, s.size());
  const JacobianW W(xi, s);
  for (double t : {1e-4, 1e-5}) {
    const Vec err = ResidualF(xi + t * d, s) - ResidualF(xi, s) - t * W.Apply(d);
    EXPECT_LE(err.norm(), 1e-8 * t * d.norm());
  }
}

TEST(CgSolve, IdentityInOneIteration) {
  const auto id = [](const Vec& v) { return v; };
  const CgResult r = CgSolve(id, 0.0, V({1, 2}), 1e-14, 10);
  EXPECT_LE((r.x - V({1, 2})).norm(), 1e-15);
  EXPECT_EQ(r.iterations, 1);
}

TEST(CgSolve, Diagonal) {
  const Vec d = V({1, 4});
  const auto op = [&](const Vec& v) { return Vec(d.cwiseProduct(v)); };
  EXPECT_LE((CgSolve(op, 0.0, V({1, 4}), 1e-14, 10).x - V({1, 1})).norm(), 1e-14);
}

TEST(CgSolve, RandomSpdMatchesDenseSolve) {
  CounterRng rng(7, Stream::kProbe, 3, 0);
  const Mat A = RandSpd(rng, 50, 0.5);
  const Vec b = RandVec(rng, 50);
  const auto op = [&](const Vec& v) { return Vec(A * v); };
  const double eta = 1e-3;
  const CgResult r = CgSolve(op, eta, b, 1e-10, 500, A.diagonal());
  const Mat Ae = A + eta * Mat::Identity(50, 50);
  EXPECT_LE((Ae * r.x - b).norm(), 1e-10);
  EXPECT_LE((r.x - Ae.ldlt().solve(b)).norm(), 1e-8);
}

TEST(ArmijoSearch, ExactNewtonStepAcceptedAtUnitStep) {
  const ProblemSpec p = RandomQuadProblem(37, 4, 3, 2, 6);
  CounterRng rng(8, Stream::kProbe, 3, 0);
  const SubproblemSpec s = RandomSub(p, rng, Block::kX, 3, 0.8);
  const Vec xi = RandVec(rng, s.size());
  const Vec F = ResidualF(xi, s);
  const Vec d = -JacobianW(xi, s).ToDense().ldlt().solve(F);
  const LineSearchResult ls = ArmijoSearch(xi, d, F, ObjectiveI(xi, s), s);
  EXPECT_EQ(ls.ell, 0);
  EXPECT_LE(ls.objective, ObjectiveI(xi, s) + s.ssn.gamma_hat * F.dot(d) + 1e-12);
}

TEST(ArmijoSearch, TinySteepestDescentStep) {
  const ProblemSpec p = RandomQuadProblem(38, 3, 3, 1, 4);
  CounterRng rng(9, Stream::kProbe, 3, 0);
  const SubproblemSpec s = RandomSub(p, rng, Block::kX, 2, 0.5);
  const Vec xi = DirectXi(s) + 1e-6 * RandVec(rng, s.size());
  const Vec F = ResidualF(xi, s);
  const Vec d = -0.1 * F;
  const LineSearchResult ls = ArmijoSearch(xi, d, F, ObjectiveI(xi, s), s);
  EXPECT_EQ(ls.ell, 0);
}

TEST(SolveSubproblem, SingleComponentInTwoIterations) {
  const ProblemSpec p = RandomQuadProblem(39, 6, 4, 2, 5);
  CounterRng rng(10, Stream::kProbe, 3, 0);
  for (Block blk : {Block::kX, Block::kY}) {
    SubproblemSpec s = RandomSub(p, rng, blk, 1, 0.9, 1e-12);
    // Undamped CG with quadratic forcing; the default forcing exponent
    // 0.1 needs several more steps to reach 1e-12.
    s.ssn.eta_floor = 0.0;
    s.ssn.tau = 1.0;
    const SubproblemResult r = SolveSubproblem(s);
    EXPECT_LE(r.report.iterations, 2);
    EXPECT_LE(r.report.final_residual, 1e-12);
    EXPECT_LE((r.xi - DirectXi(s)).norm(), 1e-10);
  }
}

TEST(SolveSubproblem, NetworkAndRegressionParameterSetsConverge) {
  ProblemSpec p = RandomQuadProblem(40, 5, 5, 2, 8);
  p.phi = Regularizer::Box(Vec::Zero(5), Vec::Constant(5, 1.0));
  CounterRng rng(11, Stream::kProbe, 3, 0);
  SubproblemSpec s = RandomSub(p, rng, Block::kX, 4, 0.002, 1e-10);
  s.ssn.rho = 0.99;
  s.ssn.eta_floor = 1e-7;
  EXPECT_TRUE(SolveSubproblem(s).report.converged);
  s.ssn.rho = 0.9;
  s.eps_sub = 1e-14;
  const SubproblemResult r = SolveSubproblem(s);
  EXPECT_TRUE(r.report.converged);
}

TEST(SolveSubproblem, SuperlinearTail) {
  ProblemSpec p = RandomQuadProblem(41, 8, 6, 2, 10, 1.0);
  CounterRng rng(12, Stream::kProbe, 3, 0);
  SubproblemSpec s = RandomSub(p, rng, Block::kX, 5, 2.0, 1e-13);
  // Regularization eta_j proportional to ||F_j|| and quadratic CG forcing.
  s.ssn.eta_floor = 0.0;
  s.ssn.tau = 1.0;
  s.ssn.tau1 = 0.5;
  s.ssn.tau2 = 0.5;
  const SubproblemResult r = SolveSubproblem(s, DefaultStart(s) * 50.0, true);
  const Vec xs = DirectXi(s);
  std::vector<double> e;
  for (const auto& it : r.iterates) e.push_back((it - xs).norm());
  ASSERT_GE(e.size(), 4u);
  // Drop exact hits before forming ratios.
  while (e.size() > 1 && e.back() < 1e-14) e.pop_back();
  ASSERT_GE(e.size(), 4u);
  const size_t n = e.size();
  const double r1 = e[n - 3] / e[n - 4], r2 = e[n - 2] / e[n - 3],
               r3 = e[n - 1] / e[n - 2];
  EXPECT_GT(r1, r2);
  EXPECT_GT(r2, r3);
}

TEST(RecoverPrimal, OneDimensional) {
  const ProblemSpec p = UnitProblem();
  EXPECT_NEAR(RecoverPrimal(V({0.5}), UnitSub(p))(0), 0.5, 1e-16);
}

TEST(RecoverPrimal, IdentityProxFormula) {
  const ProblemSpec p = RandomQuadProblem(42, 3, 3, 1, 4);
  CounterRng rng(13, Stream::kProbe, 3, 0);
  const SubproblemSpec s = RandomSub(p, rng, Block::kX, 3, 0.6);
  const Vec xi = RandVec(rng, s.size());
  Vec sum = Vec::Zero(3);
  for (Index i = 0; i < 3; ++i) sum += xi.segment(3 * i, 3);
  EXPECT_LE((RecoverPrimal(xi, s) - (s.anchor - 0.6 / 3 * sum - s.drift)).norm(),
            1e-15);
}

TEST(InexactnessBound, Values) {
  EXPECT_NEAR(InexactnessBound(1e-10, 0.002, 10, 0.5), 4e-14, 1e-28);
  EXPECT_EQ(InexactnessBound(0.0, 0.002, 10, 0.5), 0.0);
  for (double a : {0.1, 0.2, 0.4}) {
    EXPECT_LT(InexactnessBound(1e-6, a, 4, 1.0), InexactnessBound(1e-6, 2 * a, 4, 1.0));
    EXPECT_GT(InexactnessBound(1e-6, a, 4, 1.0), InexactnessBound(1e-6, a, 8, 1.0));
  }
}

// Cauchy-Schwarz on the batch sum loses a factor sqrt(b) against the
// closed-form bound, so only the widened bound is guaranteed here.
TEST(InexactnessBound, SqrtBatchWidenedBoundHolds) {
  const ProblemSpec p = RandomQuadProblem(43, 6, 4, 2, 10);
  CounterRng rng(14, Stream::kProbe, 3, 0);
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    for (int t = 0; t < 10; ++t) {
      const SubproblemSpec s = RandomSub(p, rng, Block::kX, 4, 0.5, eps);
      const SubproblemResult r = SolveSubproblem(s);
      const Vec xs = DirectXi(s);
      const double gap = (RecoverPrimal(r.xi, s) - RecoverPrimal(xs, s)).norm();
      EXPECT_LE(gap, 2.0 * InexactnessBound(eps, 0.5, 4, p.mu_star_x));
    }
  }
}

}  // namespace
}  // namespace mmspp
