// Copyright 2026 The qsl Authors
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
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsl/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum speed limit experiments"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;

  const char* subcommands[][2] = {
      {"refute-ml", "Closed-system Margolus-Levitin counterexample"},
      {"bd-gap", "Mandelstam-Tamm saturated, Bhatia-Davies not"},
      {"trajectory", "Off-equator trajectory and energy profile of the refutation family"},
      {"alpha-table", "Tabulate alpha(delta)"},
      {"validity-sweep", "Check every bound on seeded random systems"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Flat JSON experiment config")->required();
    sub->add_option("--out", out, "Output path prefix");
    sub->add_option("--format", format, "Tabular output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsl::kExitInvalidInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return qsl::run_cli(name, config, out, format, std::cout, std::cerr);
}
