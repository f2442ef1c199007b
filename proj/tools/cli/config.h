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

#ifndef MMSPP_TOOLS_CONFIG_H_
#define MMSPP_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmspp/experiments/attacks.h"
#include "mmspp/sampling.h"

namespace mmspp::cli {

using Json = nlohmann::json;

// Reads a config document. An empty path yields {"format": tag}. The
// "format" key must equal the schema tag when present.
Json LoadConfigDocument(const std::string& path);

// Applies "a.b.c=value". The value is parsed as JSON when it parses,
// otherwise it is taken as a string. Intermediate objects are created.
void ApplyOverride(Json& doc, const std::string& assignment);

struct RegressConfig {
  Index n = 20;
  Index m_dim = 20;
  Index p = 10;
  Index N = 50;
  double sigma = 0.01;
  int S = 30;
  int m_inner = 10;
  std::vector<double> alphas = {0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<Index> batch_sizes = {10};
  int trials = 7;
  double eps_floor = 1e-14;
  double delta0 = 0.0;
  double delta_ratio = 1.0;
  SamplingMode sampling = SamplingMode::kWithoutReplacement;
  // Trial starts are Gaussian with this standard deviation; the instance
  // has its saddle point at the origin.
  double start_scale = 1.0;
  bool project_each_outer = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  static RegressConfig FromJson(const Json& j);
  Json ToJson() const;
};

struct NetflowConfig {
  Index n_nodes = 10;
  std::vector<std::pair<double, double>> cells = {
      {0.3, 0.001}, {0.3, 0.01}, {0.7, 0.001}, {0.7, 0.01}};
  std::vector<double> budgets = {0.02, 0.05, 0.1, 0.15};
  int trials = 15;
  Index M = 2000;
  double eta_y = 1e-5;
  double eps_z = 1e-8;
  SnmmsppAttackParams snmmspp;
  MgdParams mgd;
  std::vector<AttackKind> strategies = AllAttacks();
  std::uint64_t seed = 1;
  unsigned threads = 0;

  static NetflowConfig FromJson(const Json& j);
  Json ToJson() const;
};

struct RateConfig {
  std::string instance = "regression";  // or "quadratic"
  Index n = 20;
  Index m_dim = 20;
  Index rows = 10;  // p for regression, q for quadratic
  Index N = 50;
  double sigma = 0.01;
  int seeds = 20;
  int S = 30;
  int m_inner = 5;
  Index batch = 10;
  // Empty: 0.9 times the theoretical bound.
  std::vector<double> alphas;
  double delta0 = 1.0;
  double delta_ratio = 0.5;
  double eps_floor = 1e-14;
  double start_scale = 1.0;
  double gate_margin = 0.1;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  static RateConfig FromJson(const Json& j);
  Json ToJson() const;
};

struct ProptestConfig {
  int samples = 1000;
  std::uint64_t seed = 1;
  // Runs only this case index of every selected property when >= 0.
  std::int64_t replay = -1;
  std::vector<std::string> properties;  // empty: all

  static ProptestConfig FromJson(const Json& j);
  Json ToJson() const;
};

}  // namespace mmspp::cli

#endif  // MMSPP_TOOLS_CONFIG_H_
