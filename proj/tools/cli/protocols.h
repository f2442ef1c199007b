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

#ifndef MMSPP_TOOLS_PROTOCOLS_H_
#define MMSPP_TOOLS_PROTOCOLS_H_

#include <string>
#include <vector>

#include "config.h"
#include "mmspp/driver.h"

namespace mmspp::cli {

// ---- regression sweep ------------------------------------------------------

struct RegressRun {
  double alpha = 0.0;
  Index batch = 0;
  int trial = 0;
  bool diverged = false;
  std::string error;
  RunReport report;
};

struct RegressCell {
  double alpha = 0.0;
  Index batch = 0;
  int diverged = 0;
  // Trial mean of 100 * kkt(s) / kkt(0); +inf once any trial diverged.
  std::vector<double> mean_rel_pct;
  double final_mean_rel_pct = 0.0;
};

struct RegressOutcome {
  ProblemSpec problem;
  double alpha_bound = 0.0;
  std::vector<RegressRun> runs;  // ordered (batch, alpha, trial)
  std::vector<RegressCell> cells;
};

RegressOutcome RunRegressionSweep(const RegressConfig& cfg);

// ---- network interdiction --------------------------------------------------

struct NetflowTrialRow {
  double p_er = 0.0;
  double sigma = 0.0;
  double budget_frac = 0.0;
  double budget = 0.0;
  int trial = 0;
  AttackKind strategy = AttackKind::kRandom;
  double rho = 0.0;
  bool feasible = true;
  double q_clean = 0.0;
  double q_attacked = 0.0;
  // Empty, "infeasible", or a solver error message.
  std::string note;
};

struct NetflowSummaryRow {
  double p_er = 0.0;
  double sigma = 0.0;
  double budget_frac = 0.0;
  AttackKind strategy = AttackKind::kRandom;
  double mean_rho = 0.0;
  int included = 0;
  int excluded = 0;
};

struct NetflowOutcome {
  std::vector<NetflowTrialRow> rows;  // ordered (cell, budget, trial, strategy)
  std::vector<NetflowSummaryRow> summary;
};

NetflowOutcome RunNetflowGrid(const NetflowConfig& cfg);

// Mean rho over included trials of one (cell, budget, strategy) entry.
const NetflowSummaryRow* FindSummary(const NetflowOutcome& out, double p_er,
                                     double sigma, double budget_frac,
                                     AttackKind strategy);

// ---- contraction rate ------------------------------------------------------

struct RateSeedRun {
  double alpha = 0.0;
  int seed_index = 0;
  bool diverged = false;
  std::string error;
  RunReport report;
};

struct RateAlphaResult {
  double alpha = 0.0;
  // Over seeds: mean squared primal / dual distance per epoch.
  std::vector<double> mean_primal;
  std::vector<double> mean_dual;
  double fitted_ratio = 0.0;
  double theoretical_ratio = 0.0;
  double dual_slope = 0.0;
  double dual_terminal_ratio = 0.0;
  int diverged = 0;
  bool gate_ok = false;
};

struct RateOutcome {
  ProblemSpec problem;
  SaddlePoint reference;
  double alpha_bound = 0.0;
  std::vector<RateSeedRun> runs;
  std::vector<RateAlphaResult> per_alpha;
};

ProblemSpec BuildRateInstance(const RateConfig& cfg);
RateOutcome RunRateStudy(const RateConfig& cfg);

// ---- property suites -------------------------------------------------------

struct PropertyFailure {
  std::string property;
  std::int64_t case_index = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct ProptestOutcome {
  std::vector<std::pair<std::string, int>> cases_run;
  std::vector<PropertyFailure> failures;
};

const std::vector<std::string>& PropertyNames();
ProptestOutcome RunPropertySuites(const ProptestConfig& cfg);

}  // namespace mmspp::cli

#endif  // MMSPP_TOOLS_PROTOCOLS_H_
