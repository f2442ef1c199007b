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

#include "mmspp/problem_io.h"
#include "mmspp/regularizer.h"
#include "mmspp/rng.h"
#include "test_util.h"

namespace mmspp {
namespace {

using testing::RandVec;
using testing::V;

std::vector<Regularizer> Catalog(Index n) {
  return {Regularizer::Zero(), Regularizer::L1(0.7),
          Regularizer::Box(Vec::Constant(n, -0.5), Vec::Constant(n, 1.5)),
          Regularizer::SquaredL2(1.3)};
}

TEST(Prox, ZeroIsIdentity) {
  EXPECT_EQ(ProxEval(Regularizer::Zero(), 3.0, V({3, -1})), V({3, -1}));
}

TEST(Prox, SoftThreshold) {
  const Vec z = ProxEval(Regularizer::L1(1.0), 1.0, V({2, -0.5}));
  EXPECT_EQ(z, V({1, 0}));
}

TEST(Prox, BoxProjectionIgnoresAlpha) {
  const Regularizer r = Regularizer::Box(V({0, 0}), V({1, 1}));
  EXPECT_EQ(ProxEval(r, 7.0, V({2, -3})), V({1, 0}));
  EXPECT_EQ(ProxEval(r, 0.1, V({2, -3})), V({1, 0}));
}

TEST(Prox, SquaredL2Shrinks) {
  // argmin (w/2) z^2 + (v - z)^2 / (2 alpha) = v / (1 + alpha w).
  EXPECT_NEAR(ProxEval(Regularizer::SquaredL2(2.0), 0.5, V({4}))(0), 2.0, 1e-15);
}

TEST(Prox, InfiniteBoxBounds) {
  const double inf = std::numeric_limits<double>::infinity();
  const Regularizer r = Regularizer::Box(V({-inf, 0}), V({1, inf}));
  EXPECT_EQ(ProxEval(r, 1.0, V({-5, -5})), V({-5, 0}));
}

TEST(Envelope, ZeroRegularizer) {
  EXPECT_EQ(MoreauEnvelope(Regularizer::Zero(), 2.0, V({1, -4})), 0.0);
}

TEST(Envelope, L1AgainstGridMinimization) {
  // min_z |z| + (2 - z)^2 / 2 by a refined 1-D grid.
  double lo = -5, hi = 5, best = 0;
  for (int level = 0; level < 8; ++level) {
    double bz = lo, bv = 1e300;
    const double h = (hi - lo) / 1000;
    for (int i = 0; i <= 1000; ++i) {
      const double z = lo + i * h;
      const double v = std::abs(z) + 0.5 * (2 - z) * (2 - z);
      if (v < bv) bv = v, bz = z;
    }
    best = bv;
    lo = bz - h;
    hi = bz + h;
  }
  EXPECT_NEAR(best, 1.5, 1e-8);
  EXPECT_NEAR(MoreauEnvelope(Regularizer::L1(1.0), 1.0, V({2})), 1.5, 1e-15);
}

TEST(Envelope, BoundedByRegularizerValue) {
  CounterRng rng(1, Stream::kProbe, 1, 0);
  for (const auto& r : Catalog(3)) {
    for (int t = 0; t < 50; ++t) {
      Vec v = RandVec(rng, 3);
      if (!r.InDomain(v)) v = ProxEval(r, 1.0, v);
      EXPECT_LE(MoreauEnvelope(r, 0.3, v), r.Value(v) + 1e-14);
    }
  }
}

TEST(Envelope, GradientIsScaledResidual) {
  CounterRng rng(2, Stream::kProbe, 1, 0);
  for (const auto& r : Catalog(4)) {
    for (double alpha : {0.2, 1.0, 3.0}) {
      const Vec v = RandVec(rng, 4, 2.0);
      const Vec g = (v - ProxEval(r, alpha, v)) / alpha;
      Vec fd(4);
      for (Index i = 0; i < 4; ++i) {
        Vec a = v, b = v;
        a(i) += 1e-6;
        b(i) -= 1e-6;
        fd(i) = (MoreauEnvelope(r, alpha, a) - MoreauEnvelope(r, alpha, b)) / 2e-6;
      }
      EXPECT_LE((fd - g).norm(), 1e-6 * (1 + g.norm())) << KindName(r.kind());
    }
  }
}

TEST(ProxJacobian, ZeroIsIdentity) {
  EXPECT_EQ(ProxJacobian(Regularizer::Zero(), 1.0, V({1, 2})).diag, V({1, 1}));
}

TEST(ProxJacobian, L1ActivePattern) {
  EXPECT_EQ(ProxJacobian(Regularizer::L1(1.0), 1.0, V({2, 0.5})).diag, V({1, 0}));
}

TEST(ProxJacobian, EntriesInUnitInterval) {
  CounterRng rng(3, Stream::kProbe, 1, 0);
  for (const auto& r : Catalog(5)) {
    const Vec d = ProxJacobian(r, 0.8, RandVec(rng, 5, 2.0)).diag;
    EXPECT_GE(d.minCoeff(), 0.0);
    EXPECT_LE(d.maxCoeff(), 1.0);
  }
}

TEST(ProxJacobian, DirectionalConsistencyAwayFromKinks) {
  CounterRng rng(4, Stream::kProbe, 1, 0);
  for (const auto& r : Catalog(4)) {
    const double alpha = 0.6;
    Vec v = RandVec(rng, 4, 2.0);
    const Vec jd = ProxJacobian(r, alpha, v).diag;
    for (Index j = 0; j < 4; ++j) {
      for (double t : {1e-4, 1e-5}) {
        Vec w = v;
        w(j) += t;
        const Vec diff = ProxEval(r, alpha, w) - ProxEval(r, alpha, v);
        // Skip draws that straddle a kink.
        if (std::abs(diff(j) / t - jd(j)) > 0.5) continue;
        Vec col = Vec::Zero(4);
        col(j) = t * jd(j);
        EXPECT_LE((diff - col).norm(), 1e-9) << KindName(r.kind());
      }
    }
  }
}

TEST(MoreauIdentity, L1ClosedForm) {
  EXPECT_EQ(ProxEval(Regularizer::L1(1.0), 1.0, V({2}))(0), 1.0);
  EXPECT_EQ(ConjugateProxEval(Regularizer::L1(1.0), 1.0, V({2}))(0), 1.0);
  EXPECT_EQ(MoreauIdentityCheck(Regularizer::L1(1.0), 1.0, V({2})), 0.0);
}

TEST(MoreauIdentity, RandomizedCatalog) {
  CounterRng rng(5, Stream::kProbe, 1, 0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    for (const auto& r : Catalog(3)) {
      const double alpha = std::exp(rng.Uniform(-3, 3));
      worst = std::max(worst, MoreauIdentityCheck(r, alpha, RandVec(rng, 3)));
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Regularizer, JsonRoundTrip) {
  for (const auto& r : Catalog(2)) {
    const Regularizer back = RegularizerFromJson(RegularizerToJson(r));
    EXPECT_EQ(back.kind(), r.kind());
    EXPECT_EQ(RegularizerToJson(back), RegularizerToJson(r));
  }
}

TEST(Regularizer, RejectsInvalidParameters) {
  EXPECT_THROW(Regularizer::L1(-1.0), InvalidArgument);
  EXPECT_THROW(Regularizer::Box(V({1}), V({0})), InvalidArgument);
}

}  // namespace
}  // namespace mmspp
