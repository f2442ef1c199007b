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

#ifndef MMSPP_TOOLS_COMMANDS_H_
#define MMSPP_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.h"

namespace mmspp::cli {

struct Invocation {
  std::string subcommand;  // regress | netflow | rate | proptest
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
};

// Config document with overrides applied; --trials maps to "trials",
// "seeds" (rate) or "samples" (proptest).
Json ResolveConfig(const Invocation& inv);

int RunRegress(const RegressConfig& cfg, const std::string& out_dir,
               std::ostream& log);
int RunNetflow(const NetflowConfig& cfg, const std::string& out_dir,
               std::ostream& log);
// Nonzero when any fitted ratio exceeds theoretical + gate_margin.
int RunRate(const RateConfig& cfg, const std::string& out_dir,
            std::ostream& log);
int RunProptest(const ProptestConfig& cfg, const std::string& out_dir,
                std::ostream& log);

// Dispatch. Returns the process exit code; 2 on configuration errors.
int Run(const Invocation& inv, std::ostream& log, std::ostream& err);

}  // namespace mmspp::cli

#endif  // MMSPP_TOOLS_COMMANDS_H_
