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

#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Stochastic proximal point solver for constrained minimax problems"};
  app.require_subcommand(1);
  mmspp::cli::Invocation inv;
  std::uint64_t seed = 0;
  int trials = 0;

  for (const char* name : {"regress", "netflow", "rate", "proptest"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", inv.config_path, "JSON config document");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--trials", trials, "Trials, seeds or samples per property")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", inv.out_dir, "Output directory");
    sub->add_option("--set", inv.overrides, "key=value override (repeatable)");
  }
  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  inv.subcommand = sub->get_name();
  if (sub->count("--seed")) inv.seed = seed;
  if (sub->count("--trials")) inv.trials = trials;
  return mmspp::cli::Run(inv, std::cout, std::cerr);
}
