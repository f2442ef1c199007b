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

#ifndef MMSPP_RNG_H_
#define MMSPP_RNG_H_

#include <cstdint>
#include <limits>

namespace mmspp {

// Purpose tags that separate independent random streams drawn from one seed.
enum class Stream : std::uint64_t {
  kBatch = 1,
  kProblem = 2,
  kGraph = 3,
  kCosts = 4,
  kAttack = 5,
  kStart = 6,
  kProbe = 7,
};

// Counter-based generator: the stream is a pure function of the key
// (seed, stream, a, b), so any (s, k) draw can be reproduced without
// replaying earlier draws. The output function is SplitMix64.
//
// Satisfies UniformRandomBitGenerator, but the distribution helpers below
// are used instead of <random> distributions so results do not depend on
// the standard library implementation.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, Stream stream, std::uint64_t a = 0,
             std::uint64_t b = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform on {0, ..., n - 1}; n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);
  double Normal();
  double Normal(double mean, double stddev) {
    return mean + stddev * Normal();
  }
  // Exponential(1), for Dirichlet sampling.
  double Exponential();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace mmspp

#endif  // MMSPP_RNG_H_
