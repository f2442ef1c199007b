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

#ifndef MMSPP_SAMPLING_H_
#define MMSPP_SAMPLING_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmspp/problem.h"
#include "mmspp/types.h"

namespace mmspp {

enum class SamplingMode { kWithReplacement, kWithoutReplacement };

const char* SamplingModeName(SamplingMode mode);
SamplingMode ParseSamplingMode(const std::string& name);

struct SamplerConfig {
  SamplingMode mode = SamplingMode::kWithoutReplacement;
  Index batch_size = 1;
  std::uint64_t seed = 0;

  void Validate(Index N) const;
};

// Ordered tuple of 0-based component indices. Repeats are possible with
// replacement and count with multiplicity in batch averages.
using BatchSample = std::vector<Index>;

// The batch for draw (s, k); a pure function of (seed, s, k).
BatchSample DrawBatch(const SamplerConfig& cfg, Index N, std::uint64_t s,
                      std::uint64_t k);

struct VarianceCorrection {
  Vec v_x;
  Vec v_y;
  Vec hat_v_x;
  Vec hat_v_y;
};

// SVRG control variates at the cached reference:
//   v_x = full(grad g + grad_x f)(ref) - batch(grad g + grad_x f)(ref)
//   v_y = full(-grad h + grad_y f)(ref) + batch(grad h - grad_y f)(ref)
// Throws StaleReferenceError if `state` caches gradients for a different
// reference than (x_ref, y_ref).
std::pair<Vec, Vec> SvrgCorrection(const ProblemSpec& p,
                                   const BatchSample& batch, const Vec& x_ref,
                                   const Vec& y_ref, const IterateState& state);

// hat_v_x = alpha (v_x + A' lambda), hat_v_y = -alpha (v_y + B' lambda).
std::pair<Vec, Vec> DriftVectors(const Vec& v_x, const Vec& v_y,
                                 const Vec& lambda, double alpha, const Mat& A,
                                 const Mat& B);

VarianceCorrection BuildCorrection(const ProblemSpec& p,
                                   const BatchSample& batch,
                                   const IterateState& state, double alpha);

// 1 with replacement, (N - b) / (N - 1) without; 0 when N = 1.
double TauFactor(SamplingMode mode, Index N, Index b);

// Batch average of grad_phi_x / grad_phi_y over `batch` in tuple order.
Vec BatchGradX(const ProblemSpec& p, const BatchSample& batch, const Vec& x,
               const Vec& y);
Vec BatchGradY(const ProblemSpec& p, const BatchSample& batch, const Vec& x,
               const Vec& y);

// Variance-reduced estimators of grad_x phi^x_y(x) and grad_y phi^y_x(y):
//   u_x = batch_x(x, y) - batch_x(x_ref, y_ref) + full_x(x_ref, y_ref)
//   u_y = batch_y(x, y) - batch_y(x_ref, y_ref) + full_y(x_ref, y_ref)
std::pair<Vec, Vec> SvrgEstimators(const ProblemSpec& p,
                                   const BatchSample& batch, const Vec& x,
                                   const Vec& y, const Vec& x_ref,
                                   const Vec& y_ref, const Vec& full_x_ref,
                                   const Vec& full_y_ref);

struct VarianceReport {
  Index trials = 0;
  // Mean squared deviation of each estimator from the exact gradient.
  double empirical_x = 0.0;
  double empirical_y = 0.0;
  // (L_phi^2 tau / b) (||x - x_ref||^2 + ||y - y_ref||^2) per block.
  double bound_x = 0.0;
  double bound_y = 0.0;
  double tau = 0.0;
  // Unbiased sample variance (trials - 1 denominator) of the X estimator.
  double sample_variance_x = 0.0;
};

// Monte-Carlo estimate over `trials` independent batches drawn from
// stream key (cfg.seed, probe_key, t).
VarianceReport VarianceProbe(const ProblemSpec& p, const SamplerConfig& cfg,
                             const Vec& x, const Vec& y, const Vec& x_ref,
                             const Vec& y_ref, Index trials,
                             std::uint64_t probe_key = 0);

// Every batch with its probability: all N^b tuples with replacement, all
// ordered b-subsets without. Intended for small N.
std::vector<std::pair<BatchSample, double>> EnumerateBatches(SamplingMode mode,
                                                             Index N, Index b);

}  // namespace mmspp

#endif  // MMSPP_SAMPLING_H_
