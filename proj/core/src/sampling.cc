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

#include "mmspp/sampling.h"

#include <string>
#include <tuple>
#include <unordered_map>

#include "mmspp/rng.h"

namespace mmspp {

const char* SamplingModeName(SamplingMode mode) {
  return mode == SamplingMode::kWithReplacement ? "with_replacement"
                                                : "without_replacement";
}

SamplingMode ParseSamplingMode(const std::string& name) {
  if (name == "with_replacement") return SamplingMode::kWithReplacement;
  if (name == "without_replacement") return SamplingMode::kWithoutReplacement;
  throw InvalidArgument("unknown sampling mode '" + name + "'");
}

void SamplerConfig::Validate(Index N) const {
  if (N < 1) throw InvalidArgument("sampler: N must be >= 1");
  if (batch_size < 1) throw InvalidArgument("sampler: batch size must be >= 1");
  if (batch_size > N) {
    throw InvalidArgument("sampler: batch size " + std::to_string(batch_size) +
                          " exceeds N = " + std::to_string(N));
  }
}

BatchSample DrawBatch(const SamplerConfig& cfg, Index N, std::uint64_t s,
                      std::uint64_t k) {
  cfg.Validate(N);
  CounterRng rng(cfg.seed, Stream::kBatch, s, k);
  const Index b = cfg.batch_size;
  BatchSample out(static_cast<size_t>(b));
  if (cfg.mode == SamplingMode::kWithReplacement) {
    for (auto& idx : out) idx = static_cast<Index>(rng.UniformInt(N));
    return out;
  }
  // Partial Fisher-Yates over a virtual identity permutation; only swapped
  // slots are stored.
  std::unordered_map<Index, Index> swapped;
  auto at = [&](Index i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (Index i = 0; i < b; ++i) {
    const Index j = i + static_cast<Index>(rng.UniformInt(N - i));
    const Index vi = at(i), vj = at(j);
    out[static_cast<size_t>(i)] = vj;
    swapped[j] = vi;
    swapped[i] = vj;
  }
  return out;
}

Vec BatchGradX(const ProblemSpec& p, const BatchSample& batch, const Vec& x,
               const Vec& y) {
  Vec acc = Vec::Zero(p.n);
  for (Index i : batch) acc += p.components[static_cast<size_t>(i)]->grad_phi_x(x, y);
  return acc / static_cast<double>(batch.size());
}

Vec BatchGradY(const ProblemSpec& p, const BatchSample& batch, const Vec& x,
               const Vec& y) {
  Vec acc = Vec::Zero(p.m_dim);
  for (Index i : batch) acc += p.components[static_cast<size_t>(i)]->grad_phi_y(x, y);
  return acc / static_cast<double>(batch.size());
}

std::pair<Vec, Vec> SvrgCorrection(const ProblemSpec& p,
                                   const BatchSample& batch, const Vec& x_ref,
                                   const Vec& y_ref, const IterateState& state) {
  if (state.x_ref.size() != x_ref.size() || state.y_ref.size() != y_ref.size() ||
      state.x_ref != x_ref || state.y_ref != y_ref) {
    throw StaleReferenceError(
        "cached full gradients were computed at a different reference point");
  }
  Vec v_x = state.grad_ref_x - BatchGradX(p, batch, x_ref, y_ref);
  Vec v_y = state.grad_ref_y + BatchGradY(p, batch, x_ref, y_ref);
  return {std::move(v_x), std::move(v_y)};
}

std::pair<Vec, Vec> DriftVectors(const Vec& v_x, const Vec& v_y,
                                 const Vec& lambda, double alpha, const Mat& A,
                                 const Mat& B) {
  if (!(alpha > 0.0)) throw InvalidArgument("DriftVectors: alpha <= 0");
  Vec hx = alpha * (v_x + A.transpose() * lambda);
  Vec hy = -alpha * (v_y + B.transpose() * lambda);
  return {std::move(hx), std::move(hy)};
}

VarianceCorrection BuildCorrection(const ProblemSpec& p,
                                   const BatchSample& batch,
                                   const IterateState& state, double alpha) {
  VarianceCorrection vc;
  std::tie(vc.v_x, vc.v_y) =
      SvrgCorrection(p, batch, state.x_ref, state.y_ref, state);
  std::tie(vc.hat_v_x, vc.hat_v_y) =
      DriftVectors(vc.v_x, vc.v_y, state.lambda, alpha, p.A, p.B);
  return vc;
}

double TauFactor(SamplingMode mode, Index N, Index b) {
  if (N <= 1) return 0.0;
  if (mode == SamplingMode::kWithReplacement) return 1.0;
  return static_cast<double>(N - b) / static_cast<double>(N - 1);
}

std::pair<Vec, Vec> SvrgEstimators(const ProblemSpec& p,
                                   const BatchSample& batch, const Vec& x,
                                   const Vec& y, const Vec& x_ref,
                                   const Vec& y_ref, const Vec& full_x_ref,
                                   const Vec& full_y_ref) {
  Vec ux = BatchGradX(p, batch, x, y) - BatchGradX(p, batch, x_ref, y_ref) +
           full_x_ref;
  Vec uy = BatchGradY(p, batch, x, y) - BatchGradY(p, batch, x_ref, y_ref) +
           full_y_ref;
  return {std::move(ux), std::move(uy)};
}

VarianceReport VarianceProbe(const ProblemSpec& p, const SamplerConfig& cfg,
                             const Vec& x, const Vec& y, const Vec& x_ref,
                             const Vec& y_ref, Index trials,
                             std::uint64_t probe_key) {
  if (trials < 2) throw InvalidArgument("VarianceProbe needs >= 2 trials");
  cfg.Validate(p.N());
  const auto [gx, gy] = FullGradients(p, x, y);
  const auto [rx, ry] = FullGradients(p, x_ref, y_ref);

  VarianceReport rep;
  rep.trials = trials;
  rep.tau = TauFactor(cfg.mode, p.N(), cfg.batch_size);
  const double d2 = (x - x_ref).squaredNorm() + (y - y_ref).squaredNorm();
  const double scale = rep.tau / static_cast<double>(cfg.batch_size) * d2;
  rep.bound_x = p.L_phi_x() * p.L_phi_x() * scale;
  rep.bound_y = p.L_phi_y() * p.L_phi_y() * scale;

  SamplerConfig probe = cfg;
  probe.seed = SplitMix64(cfg.seed ^ 0x5A5A5A5A5A5A5A5AULL);
  Vec mean_x = Vec::Zero(p.n);
  double sx = 0.0, sy = 0.0;
  for (Index t = 0; t < trials; ++t) {
    const BatchSample batch = DrawBatch(probe, p.N(), probe_key,
                                        static_cast<std::uint64_t>(t));
    const auto [ux, uy] = SvrgEstimators(p, batch, x, y, x_ref, y_ref, rx, ry);
    sx += (ux - gx).squaredNorm();
    sy += (uy - gy).squaredNorm();
    mean_x += ux;
  }
  const double tr = static_cast<double>(trials);
  rep.empirical_x = sx / tr;
  rep.empirical_y = sy / tr;
  mean_x /= tr;
  // sum ||u - mean||^2 = sum ||u - g||^2 - T ||mean - g||^2.
  rep.sample_variance_x =
      (sx - tr * (mean_x - gx).squaredNorm()) / (tr - 1.0);
  return rep;
}

std::vector<std::pair<BatchSample, double>> EnumerateBatches(SamplingMode mode,
                                                             Index N, Index b) {
  std::vector<std::pair<BatchSample, double>> out;
  BatchSample cur(static_cast<size_t>(b), 0);
  std::vector<bool> used(static_cast<size_t>(N), false);
  size_t count = 0;
  auto rec = [&](auto&& self, Index pos) -> void {
    if (pos == b) {
      out.emplace_back(cur, 0.0);
      ++count;
      return;
    }
    for (Index i = 0; i < N; ++i) {
      if (mode == SamplingMode::kWithoutReplacement && used[static_cast<size_t>(i)]) continue;
      used[static_cast<size_t>(i)] = true;
      cur[static_cast<size_t>(pos)] = i;
      self(self, pos + 1);
      used[static_cast<size_t>(i)] = false;
    }
  };
  rec(rec, 0);
  for (auto& e : out) e.second = 1.0 / static_cast<double>(count);
  return out;
}

}  // namespace mmspp
