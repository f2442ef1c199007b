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

#include <Eigen/Eigenvalues>
#include <cmath>

#include "mmspp/experiments/regression.h"
#include "mmspp/driver.h"
#include "mmspp/problem.h"
#include "mmspp/problem_io.h"
#include "test_util.h"

namespace mmspp {
namespace {

using testing::M1;
using testing::Quad;
using testing::RandomQuadProblem;
using testing::RandVec;
using testing::Unit1D;
using testing::V;

ProblemSpec OneDim(double a, double b, double c) {
  return MakeProblem({Unit1D()}, Regularizer::Zero(), Regularizer::Zero(),
                     M1(a), M1(b), V({c}));
}

// Term-by-term evaluation straight from the component matrices.
double NaiveLagrangian(const ProblemSpec& p, const Vec& x, const Vec& y,
                       const Vec& l) {
  double acc = 0.0;
  for (const auto& c : p.components) {
    const auto& qc = dynamic_cast<const QuadraticBilinearComponent&>(*c);
    const Mat P = qc.P().ToDense(), Q = qc.Q().ToDense(), K = qc.K().ToDense();
    acc += 0.5 * x.dot(P * x) + qc.p().dot(x) + y.dot(K * x) -
           0.5 * y.dot(Q * y) - qc.q().dot(y);
  }
  return acc / static_cast<double>(p.N()) + p.phi.Value(x) - p.psi.Value(y) +
         l.dot(p.A * x + p.B * y + p.c);
}

TEST(Lagrangian, AllZeroInstanceIsZero) {
  const ProblemSpec p = MakeProblem(
      {Quad(M1(1.0), V({0.0}), M1(1.0), V({0.0}), M1(0.0))},
      Regularizer::Zero(), Regularizer::Zero(), M1(1.0), M1(1.0), V({0.0}));
  EXPECT_EQ(LagrangianValue(p, V({0}), V({0}), V({0})), 0.0);
}

TEST(Lagrangian, ConstantInLambdaOnFeasibleSet) {
  const ProblemSpec p = RandomQuadProblem(3, 4, 3, 2, 5);
  CounterRng rng(7, Stream::kProbe, 0, 0);
  for (int t = 0; t < 20; ++t) {
    const auto proj = ProjectOntoC(p, RandVec(rng, p.n), RandVec(rng, p.m_dim));
    const Vec l = RandVec(rng, p.q);
    const double a = LagrangianValue(p, proj.x, proj.y, l);
    const double b = LagrangianValue(p, proj.x, proj.y, 2.0 * l);
    EXPECT_NEAR(a, b, 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST(Lagrangian, MatchesTermwiseEvaluation) {
  const ProblemSpec p = RandomQuadProblem(11, 3, 3, 2, 4);
  CounterRng rng(8, Stream::kProbe, 0, 0);
  for (int t = 0; t < 10; ++t) {
    const Vec x = RandVec(rng, 3), y = RandVec(rng, 3), l = RandVec(rng, 2);
    const double ref = NaiveLagrangian(p, x, y, l);
    EXPECT_NEAR(LagrangianValue(p, x, y, l), ref, 1e-12 * (1 + std::abs(ref)));
  }
}

TEST(Lagrangian, OutsideBoxIsInfinite) {
  ProblemSpec p = OneDim(1, 1, 0);
  p.phi = Regularizer::Box(V({0}), V({1}));
  EXPECT_TRUE(std::isinf(LagrangianValue(p, V({2}), V({0}), V({0}))));
}

TEST(Lagrangian, DimensionMismatchThrows) {
  const ProblemSpec p = OneDim(1, 1, 0);
  EXPECT_THROW(LagrangianValue(p, V({1, 2}), V({0}), V({0})), DimensionError);
}

TEST(FullGradients, IdentityHessian) {
  const ProblemSpec p = MakeProblem(
      {Quad(Mat::Identity(2, 2), V({0, 0}), M1(1.0), V({0}), Mat::Zero(1, 2))},
      Regularizer::Zero(), Regularizer::Zero(), Mat::Ones(1, 2), M1(1.0),
      V({0}));
  const auto [gx, gy] = FullGradients(p, V({2, 0}), V({0}));
  EXPECT_EQ(gx, V({2, 0}));
  EXPECT_EQ(gy, V({0}));
}

TEST(FullGradients, MatchCentralDifferences) {
  const ProblemSpec p = RandomQuadProblem(5, 4, 3, 2, 6);
  CounterRng rng(9, Stream::kProbe, 0, 0);
  const Vec l = Vec::Zero(p.q);
  for (int t = 0; t < 10; ++t) {
    const Vec x = RandVec(rng, p.n), y = RandVec(rng, p.m_dim);
    const auto [gx, gy] = FullGradients(p, x, y);
    const double hx = 1e-6 * (1.0 + x.norm()), hy = 1e-6 * (1.0 + y.norm());
    Vec fx(p.n), fy(p.m_dim);
    for (Index i = 0; i < p.n; ++i) {
      Vec a = x, b = x;
      a(i) += hx;
      b(i) -= hx;
      fx(i) = (LagrangianValue(p, a, y, l) - LagrangianValue(p, b, y, l)) / (2 * hx);
    }
    // gy is the gradient of the negated y-part.
    for (Index i = 0; i < p.m_dim; ++i) {
      Vec a = y, b = y;
      a(i) += hy;
      b(i) -= hy;
      fy(i) = -(LagrangianValue(p, x, a, l) - LagrangianValue(p, x, b, l)) / (2 * hy);
    }
    EXPECT_LE((fx - gx).norm(), 1e-6 * gx.norm());
    EXPECT_LE((fy - gy).norm(), 1e-6 * gy.norm());
  }
}

TEST(FullGradients, StationaryAtKktReference) {
  const ProblemSpec p = RandomQuadProblem(6, 5, 4, 3, 4);
  const SaddlePoint s = SolveKktReference(p);
  const auto [gx, gy] = FullGradients(p, s.x_star, s.y_star);
  EXPECT_LE((gx + p.A.transpose() * s.lambda_star).norm(), 1e-8);
  EXPECT_LE((gy - p.B.transpose() * s.lambda_star).norm(), 1e-8);
}

TEST(NaturalResidual, ZeroAtKktPoint) {
  const ProblemSpec p = RandomQuadProblem(12, 4, 4, 2, 3);
  const SaddlePoint s = SolveKktReference(p);
  for (Block b : {Block::kX, Block::kY}) {
    EXPECT_LE(NaturalResidual(p, b, s.x_star, s.y_star, s.lambda_star, 1.0).norm(),
              1e-8);
  }
}

TEST(NaturalResidual, UnitQuadratic) {
  const ProblemSpec p = OneDim(1, 1, 0);
  EXPECT_NEAR(NaturalResidual(p, Block::kX, V({1}), V({0}), V({0}), 1.0)(0), 1.0,
              1e-15);
}

TEST(NaturalResidual, RejectsNonPositiveAlpha) {
  const ProblemSpec p = OneDim(1, 1, 0);
  EXPECT_THROW(NaturalResidual(p, Block::kX, V({1}), V({0}), V({0}), 0.0),
               InvalidArgument);
}

TEST(NaturalResidual, LipschitzInX) {
  const ProblemSpec p = RandomQuadProblem(13, 4, 3, 2, 5);
  CounterRng rng(10, Stream::kProbe, 0, 0);
  const double L = 2.0 + p.L_f_bar + p.L_g_bar;
  const Vec y = RandVec(rng, p.m_dim), l = RandVec(rng, p.q);
  for (int t = 0; t < 100; ++t) {
    const Vec x1 = RandVec(rng, p.n), x2 = RandVec(rng, p.n);
    const double lhs = (NaturalResidual(p, Block::kX, x1, y, l, 1.0) -
                        NaturalResidual(p, Block::kX, x2, y, l, 1.0)).norm();
    EXPECT_LE(lhs, L * (x1 - x2).norm() * (1 + 1e-12));
  }
}

TEST(KktResidual, SmallAtSaddlePoint) {
  const ProblemSpec p = RandomQuadProblem(14, 6, 5, 3, 8);
  const SaddlePoint s = SolveKktReference(p);
  EXPECT_LE(KktResidual(p, s.x_star, s.y_star, s.lambda_star), 1e-8);
  EXPECT_LE(s.kkt_residual, 1e-10);
}

TEST(KktResidual, FeasiblePointUsesNaturalResiduals) {
  const ProblemSpec p = RandomQuadProblem(15, 3, 3, 2, 3);
  CounterRng rng(11, Stream::kProbe, 0, 0);
  const auto proj = ProjectOntoC(p, RandVec(rng, 3), RandVec(rng, 3));
  const Vec l = RandVec(rng, 2);
  const double rx = NaturalResidual(p, Block::kX, proj.x, proj.y, l, 1).norm();
  const double ry = NaturalResidual(p, Block::kY, proj.x, proj.y, l, 1).norm();
  EXPECT_NEAR(KktResidual(p, proj.x, proj.y, l), std::max(rx, ry), 1e-12);
}

TEST(KktResidual, InfeasibleOriginAtLeastC) {
  const ProblemSpec p = RandomQuadProblem(16, 3, 3, 2, 3);
  EXPECT_GE(KktResidual(p, Vec::Zero(3), Vec::Zero(3), Vec::Zero(2)), p.c.norm());
}

TEST(SolveKktReference, HandSolvedOneDimensional) {
  // x + lambda = 0, y - 2 lambda = 0, x + 2y - 2 = 0.
  const SaddlePoint s = SolveKktReference(OneDim(1, 2, -2));
  EXPECT_NEAR(s.x_star(0), -2.0 / 3.0, 1e-14);
  EXPECT_NEAR(s.y_star(0), 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(s.lambda_star(0), 2.0 / 3.0, 1e-14);
}

TEST(SolveKktReference, SymmetricUnitInstanceIsSingular) {
  // With A = B = 1 the x and y stationarity rows force x + y = 0, which
  // contradicts x + y = 2.
  EXPECT_THROW(SolveKktReference(OneDim(1, 1, -2)), RankDeficientError);
}

TEST(SolveKktReference, OriginWhenDataVanish) {
  const ProblemSpec p = MakeProblem({Unit1D()}, Regularizer::Zero(),
                                    Regularizer::Zero(), M1(1), M1(2), V({0}));
  const SaddlePoint s = SolveKktReference(p);
  EXPECT_EQ(s.x_star.norm() + s.y_star.norm() + s.lambda_star.norm(), 0.0);
}

TEST(SolveKktReference, RejectsRegularizers) {
  ProblemSpec p = OneDim(1, 2, 0);
  p.phi = Regularizer::L1(1.0);
  EXPECT_THROW(SolveKktReference(p), UnsupportedProblem);
}

TEST(MakeProblem, ModuliFromAveragedHessians) {
  const ProblemSpec p = RandomQuadProblem(17, 4, 3, 2, 5);
  Mat P = Mat::Zero(4, 4), Q = Mat::Zero(3, 3);
  double Lg = 0;
  for (const auto& c : p.components) {
    const auto& qc = dynamic_cast<const QuadraticBilinearComponent&>(*c);
    P += qc.P().ToDense() / 5.0;
    Q += qc.Q().ToDense() / 5.0;
    Lg = std::max(Lg, Eigen::SelfAdjointEigenSolver<Mat>(qc.P().ToDense())
                          .eigenvalues().maxCoeff());
  }
  EXPECT_NEAR(p.mu_x, Eigen::SelfAdjointEigenSolver<Mat>(P).eigenvalues().minCoeff(),
              1e-12);
  EXPECT_NEAR(p.mu_y, Eigen::SelfAdjointEigenSolver<Mat>(Q).eigenvalues().minCoeff(),
              1e-12);
  EXPECT_NEAR(p.L_g_bar, Lg, 1e-10);
  EXPECT_NEAR(p.mu_star_x, 1.0 / p.L_phi_x(), 1e-15);
}

TEST(MakeProblem, StrongConvexityProbe) {
  const ProblemSpec p = RandomQuadProblem(18, 4, 4, 2, 6);
  CounterRng rng(12, Stream::kProbe, 0, 0);
  for (int t = 0; t < 50; ++t) {
    const Vec y = RandVec(rng, 4), x = RandVec(rng, 4);
    const Vec x1 = RandVec(rng, 4), x2 = RandVec(rng, 4);
    const Vec y1 = RandVec(rng, 4), y2 = RandVec(rng, 4);
    const double gx = (FullGradients(p, x1, y).first - FullGradients(p, x2, y).first)
                          .dot(x1 - x2);
    const double gy = (FullGradients(p, x, y1).second - FullGradients(p, x, y2).second)
                          .dot(y1 - y2);
    EXPECT_GE(gx, p.mu_x * (x1 - x2).squaredNorm() * (1 - 1e-12));
    EXPECT_GE(gy, p.mu_y * (y1 - y2).squaredNorm() * (1 - 1e-12));
  }
}

TEST(Component, ConjugateGradientInvertsForward) {
  const ProblemSpec p = RandomQuadProblem(19, 5, 4, 2, 3);
  CounterRng rng(13, Stream::kProbe, 0, 0);
  for (const auto& c : p.components) {
    const Vec xi = RandVec(rng, 5), y = RandVec(rng, 4);
    const Vec x = c->conj_grad_x(xi, y);
    EXPECT_LE((c->grad_phi_x(x, y) - xi).norm(), 1e-10 * xi.norm());
    const Vec eta = RandVec(rng, 4), xx = RandVec(rng, 5);
    const Vec yy = c->conj_grad_y(eta, xx);
    EXPECT_LE((c->grad_phi_y(xx, yy) - eta).norm(), 1e-10 * eta.norm());
  }
}

TEST(Regression, ModuliAreExact) {
  RegressionConfig rc;
  rc.n = 6;
  rc.m_dim = 5;
  rc.p = 3;
  rc.N = 7;
  const ProblemSpec p = GenRegression(rc);
  EXPECT_NEAR(p.mu_x, 1.0 / 5.0, 1e-14);
  EXPECT_NEAR(p.mu_y, 1.0 / 5.0, 1e-14);
  EXPECT_EQ(p.c.norm(), 0.0);
}

TEST(ProblemIo, RoundTripPreservesEverything) {
  ProblemSpec p = RandomQuadProblem(20, 3, 2, 2, 3);
  p.phi = Regularizer::Box(V({-1, -2, -3}), V({1, 2, 3}));
  p.psi = Regularizer::L1(0.5);
  const std::string text = ProblemToJson(p);
  const ProblemSpec r = ProblemFromJson(text);
  EXPECT_EQ(ProblemToJson(r), text);
  EXPECT_EQ(r.A, p.A);
  EXPECT_EQ(r.c, p.c);
  EXPECT_EQ(r.mu_x, p.mu_x);
}

TEST(ProblemIo, RejectsWrongFormatTag) {
  std::string text = ProblemToJson(OneDim(1, 2, 0));
  const auto pos = text.find(kFormatTag);
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, std::string(kFormatTag).size(), "other/9");
  EXPECT_THROW(ProblemFromJson(text), Error);
}

}  // namespace
}  // namespace mmspp
