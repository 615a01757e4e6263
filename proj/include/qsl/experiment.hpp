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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qsl/counterexamples.hpp"
#include "qsl/sweep.hpp"

namespace qsl {

enum class ExperimentKind { RefuteMl, BdGap, Trajectory, AlphaTable, ValiditySweep };
enum class OutputFormat { Csv, Json };

/// Process exit codes of the qsl tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitClaimViolated = 1,
  kExitInvalidInput = 2,
  kExitNumericalFailure = 3,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);
OutputFormat parse_format(std::string_view name);

struct RefuteMlParams {
  double delta = 0.0;
  double L = 0.0;
  double E = 1.0;
  double margin = kDefaultThetaMargin;
  std::optional<double> theta;
  int samples = 1000;
};

struct BdGapParams {
  Matrix hamiltonian;
  Vector amplitudes;
  double delta = 0.0;
  int samples = 1000;
};

struct TrajectoryParams {
  double theta = 0.0;
  double E = 1.0;
  double polar_deg = kDefaultPolarDegrees;
  Picture picture = Picture::Rotating;
  double t_max = 0.0;
  int samples = 1000;
  std::vector<double> profile_thetas;
};

struct AlphaTableParams {
  std::vector<double> deltas;
};

using ExperimentParams =
    std::variant<RefuteMlParams, BdGapParams, TrajectoryParams, AlphaTableParams, SweepParams>;

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::RefuteMl;
  ExperimentParams params;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
};

/// Validates a flat JSON config for `kind`: unknown keys and out-of-range
/// values throw InvalidConfig/DomainError before anything is computed.
/// `seed_override` (from QSL_SEED) replaces the config seed.
ExperimentConfig parse_config(ExperimentKind kind, const nlohmann::json& config,
                              std::optional<std::uint64_t> seed_override = std::nullopt);

struct ExperimentResult {
  int exit_code = kExitOk;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Full front end: reads the config file, applies overrides, runs, prints the
/// summary JSON on `out` and error JSON on `err`. Returns the exit code.
int run_cli(std::string_view subcommand, const std::filesystem::path& config_path,
            const std::optional<std::string>& out_prefix,
            const std::optional<std::string>& format, std::ostream& out, std::ostream& err);

// Serialization used by the experiment outputs.

/// %.17g, with "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double value);

/// Number, or the string "Infinity"/"-Infinity" when not finite.
nlohmann::json json_number(double value);

inline constexpr std::string_view kTrajectoryHeader =
    "t,fidelity,exp_energy,energy_uncertainty,eps_min,eps_max,norm_energy,dual_norm_energy,"
    "bloch_x,bloch_y,bloch_z";

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
nlohmann::json trajectory_json(const Trajectory& traj);
nlohmann::json bound_report_json(const BoundReport& report);
nlohmann::json refutation_report_json(const RefutationReport& report);

struct AlphaRow {
  double delta = 0.0;
  double alpha = 0.0;
  double arccos_sqrt_delta = 0.0;
  double endpoint_value = 0.0;  // (1 - sqrt(delta)) pi / 2
  bool nonincreasing = true;    // alpha <= previous row's alpha (rows sorted by delta)
  bool below_mt = false;        // alpha < arccos(sqrt(delta)) - 1e-12
};

std::vector<AlphaRow> alpha_table(std::vector<double> deltas);

}  // namespace qsl
