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

#include "qsl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace qsl {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Tracks which keys of a flat config object were consumed so the leftovers
// can be rejected.
class ConfigReader {
 public:
  explicit ConfigReader(const json& obj) : obj_(obj) {
    require(obj.is_object(), ErrorCode::InvalidConfig, "config must be a JSON object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  double number(const std::string& key) {
    used_.insert(key);
    require(obj_.contains(key), ErrorCode::InvalidConfig, "missing required key '" + key + "'");
    return as_number(key, obj_.at(key));
  }

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    return obj_.contains(key) ? as_number(key, obj_.at(key)) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) return std::nullopt;
    return as_number(key, obj_.at(key));
  }

  long long integer(const std::string& key, long long fallback) {
    used_.insert(key);
    if (!obj_.contains(key)) return fallback;
    const json& v = obj_.at(key);
    require(v.is_number_integer(), ErrorCode::InvalidConfig, "'" + key + "' must be an integer");
    return v.get<long long>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!obj_.contains(key)) return fallback;
    const json& v = obj_.at(key);
    require(v.is_string(), ErrorCode::InvalidConfig, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) return std::nullopt;
    const json& v = obj_.at(key);
    require(v.is_array(), ErrorCode::InvalidConfig, "'" + key + "' must be an array");
    std::vector<double> out;
    for (const json& x : v) out.push_back(as_number(key, x));
    return out;
  }

  std::optional<std::vector<std::vector<double>>> rows(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) return std::nullopt;
    const json& v = obj_.at(key);
    require(v.is_array(), ErrorCode::InvalidConfig, "'" + key + "' must be an array of rows");
    std::vector<std::vector<double>> out;
    for (const json& row : v) {
      require(row.is_array(), ErrorCode::InvalidConfig, "'" + key + "' rows must be arrays");
      std::vector<double> r;
      for (const json& x : row) r.push_back(as_number(key, x));
      out.push_back(std::move(r));
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      require(used_.count(key) > 0, ErrorCode::InvalidConfig, "unknown key '" + key + "'");
    }
  }

 private:
  static double as_number(const std::string& key, const json& v) {
    require(v.is_number(), ErrorCode::InvalidConfig, "'" + key + "' must be a number");
    const double d = v.get<double>();
    require(std::isfinite(d), ErrorCode::InvalidConfig, "'" + key + "' must be finite");
    return d;
  }

  const json& obj_;
  std::set<std::string> used_;
};

int checked_samples(long long n) {
  require(n >= 2 && n <= 10'000'000, ErrorCode::DomainError, "samples must lie in [2, 1e7]");
  return static_cast<int>(n);
}

RefuteMlParams parse_refute_ml(ConfigReader& r) {
  RefuteMlParams p;
  p.delta = r.number("delta");
  p.L = r.number("L");
  p.E = r.number("E", p.E);
  p.margin = r.number("margin", p.margin);
  p.theta = r.optional_number("theta");
  p.samples = checked_samples(r.integer("samples", p.samples));
  const double theta = p.theta ? *p.theta : choose_theta(p.delta, p.L, p.margin);
  make_refutation_spec(p.delta, p.L, p.E, theta);
  return p;
}

BdGapParams parse_bd_gap(ConfigReader& r) {
  BdGapParams p;
  const auto spectrum = r.numbers("spectrum");
  const auto real = r.rows("hamiltonian");
  const auto imag = r.rows("hamiltonian_imag");
  require(!(spectrum && real), ErrorCode::InvalidConfig,
          "give either 'spectrum' or 'hamiltonian', not both");
  if (real) {
    const auto n = static_cast<Eigen::Index>(real->size());
    require(n > 0, ErrorCode::InvalidConfig, "'hamiltonian' is empty");
    p.hamiltonian = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      require(static_cast<Eigen::Index>((*real)[i].size()) == n, ErrorCode::InvalidConfig,
              "'hamiltonian' must be square");
      for (Eigen::Index j = 0; j < n; ++j) p.hamiltonian(i, j) = (*real)[i][j];
    }
    if (imag) {
      require(static_cast<Eigen::Index>(imag->size()) == n, ErrorCode::InvalidConfig,
              "'hamiltonian_imag' shape differs from 'hamiltonian'");
      for (Eigen::Index i = 0; i < n; ++i) {
        require(static_cast<Eigen::Index>((*imag)[i].size()) == n, ErrorCode::InvalidConfig,
                "'hamiltonian_imag' shape differs from 'hamiltonian'");
        for (Eigen::Index j = 0; j < n; ++j) p.hamiltonian(i, j) += Complex(0.0, (*imag)[i][j]);
      }
    }
  } else {
    require(!imag, ErrorCode::InvalidConfig, "'hamiltonian_imag' requires 'hamiltonian'");
    const std::vector<double> diag = spectrum.value_or(std::vector<double>{0.0, 1.0, 2.0});
    require(!diag.empty(), ErrorCode::InvalidConfig, "'spectrum' is empty");
    p.hamiltonian = HermitianOperator::diagonal(diag).matrix();
  }
  const Eigen::Index dim = p.hamiltonian.rows();
  HermitianOperator check(p.hamiltonian);

  const auto amps = r.numbers("amplitudes");
  const auto amps_imag = r.numbers("amplitudes_imag");
  p.amplitudes = Vector::Ones(dim);
  if (amps) {
    require(static_cast<Eigen::Index>(amps->size()) == dim, ErrorCode::DimensionMismatch,
            "'amplitudes' length differs from the Hamiltonian dimension");
    for (Eigen::Index i = 0; i < dim; ++i) p.amplitudes(i) = (*amps)[i];
  }
  if (amps_imag) {
    require(amps.has_value(), ErrorCode::InvalidConfig, "'amplitudes_imag' requires 'amplitudes'");
    require(static_cast<Eigen::Index>(amps_imag->size()) == dim, ErrorCode::DimensionMismatch,
            "'amplitudes_imag' length differs from the Hamiltonian dimension");
    for (Eigen::Index i = 0; i < dim; ++i) p.amplitudes(i) += Complex(0.0, (*amps_imag)[i]);
  }
  PureState state(p.amplitudes);

  p.delta = r.number("delta", 0.0);
  require(p.delta >= 0.0 && p.delta < 1.0, ErrorCode::DomainError, "delta must lie in [0, 1)");
  p.samples = checked_samples(r.integer("samples", p.samples));
  return p;
}

TrajectoryParams parse_trajectory(ConfigReader& r) {
  TrajectoryParams p;
  p.theta = r.number("theta", kPi / 6);
  p.E = r.number("E", 1.0);
  ml_family_mu(p.E, p.theta);
  p.polar_deg = r.number("polar_deg", p.polar_deg);
  const std::string picture = r.string("picture", "rotating");
  if (picture == "rotating") {
    p.picture = Picture::Rotating;
  } else if (picture == "schrodinger") {
    p.picture = Picture::Schrodinger;
  } else {
    throw Error(ErrorCode::InvalidConfig, "picture must be 'rotating' or 'schrodinger'");
  }
  p.t_max = r.number("t_max", 2.0 * kPi);
  require(p.t_max > 0.0, ErrorCode::DomainError, "t_max must be positive");
  p.samples = checked_samples(r.integer("samples", p.samples));
  const long long points = r.integer("profile_points", 179);
  require(points >= 1 && points <= 100000, ErrorCode::DomainError,
          "profile_points must lie in [1, 1e5]");
  for (long long k = 1; k <= points; ++k) {
    p.profile_thetas.push_back(kPi * static_cast<double>(k) / static_cast<double>(points + 1));
  }
  return p;
}

AlphaTableParams parse_alpha_table(ConfigReader& r) {
  AlphaTableParams p;
  const auto deltas = r.numbers("deltas");
  const bool has_points = r.has("grid_points");
  const long long points = r.integer("grid_points", 0);
  require(!(deltas && has_points), ErrorCode::InvalidConfig,
          "give either 'deltas' or 'grid_points', not both");
  if (deltas) {
    p.deltas = *deltas;
  } else if (has_points) {
    require(points >= 2 && points <= 10'000'000, ErrorCode::DomainError,
            "grid_points must lie in [2, 1e7]");
    for (long long k = 0; k < points; ++k) {
      p.deltas.push_back(static_cast<double>(k) / static_cast<double>(points - 1));
    }
  }
  require(!p.deltas.empty(), ErrorCode::InvalidConfig, "alpha grid is empty");
  for (double d : p.deltas) {
    require(d >= 0.0 && d <= 1.0, ErrorCode::DomainError, "grid values must lie in [0, 1]");
  }
  return p;
}

SweepParams parse_sweep(ConfigReader& r, std::optional<std::uint64_t> seed) {
  SweepParams p;
  p.systems = static_cast<int>(r.integer("systems", p.systems));
  const long long config_seed = r.integer("seed", static_cast<long long>(p.seed));
  require(config_seed >= 0, ErrorCode::DomainError, "seed must be non-negative");
  p.seed = seed.value_or(static_cast<std::uint64_t>(config_seed));
  p.dim_min = static_cast<int>(r.integer("dim_min", p.dim_min));
  p.dim_max = static_cast<int>(r.integer("dim_max", p.dim_max));
  p.spectral_radius = r.number("spectral_radius", p.spectral_radius);
  p.t_max = r.number("t_max", p.t_max);
  p.samples = checked_samples(r.integer("samples", p.samples));
  p.tol = r.number("tol", p.tol);
  if (auto d = r.numbers("deltas")) p.deltas = *d;

  require(p.systems > 0 && p.systems <= 100000, ErrorCode::DomainError,
          "systems must lie in [1, 1e5]");
  require(p.dim_min >= 2 && p.dim_max >= p.dim_min && p.dim_max <= 16, ErrorCode::DomainError,
          "need 2 <= dim_min <= dim_max <= 16");
  require(p.spectral_radius > 0.0, ErrorCode::DomainError, "spectral_radius must be positive");
  require(p.t_max > 0.0, ErrorCode::DomainError, "t_max must be positive");
  require(p.tol >= 0.0, ErrorCode::DomainError, "tol must be non-negative");
  require(!p.deltas.empty(), ErrorCode::InvalidConfig, "deltas is empty");
  for (double d : p.deltas) {
    require(d >= 0.0 && d <= 1.0, ErrorCode::DomainError, "deltas must lie in [0, 1]");
  }
  return p;
}

std::filesystem::path output_path(const std::string& prefix, const std::string& suffix) {
  std::filesystem::path path(prefix + suffix);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  return path;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::InvalidConfig, "cannot write " + path.string());
  os << text;
}

void write_json(const std::filesystem::path& path, const json& value) {
  write_text(path, value.dump(2) + "\n");
}

std::filesystem::path write_table(const std::string& prefix, const std::string& name,
                                  OutputFormat format, const std::string& csv, const json& rows) {
  if (format == OutputFormat::Csv) {
    auto path = output_path(prefix, "_" + name + ".csv");
    write_text(path, csv);
    return path;
  }
  auto path = output_path(prefix, "_" + name + ".json");
  write_json(path, rows);
  return path;
}

std::filesystem::path write_trajectory(const std::string& prefix, OutputFormat format,
                                       const Trajectory& traj) {
  std::ostringstream csv;
  if (format == OutputFormat::Csv) write_trajectory_csv(csv, traj);
  return write_table(prefix, "trajectory", format, csv.str(),
                     format == OutputFormat::Json ? trajectory_json(traj) : json());
}

double spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

ExperimentResult run_refute_ml(const ExperimentConfig& cfg, const RefuteMlParams& p) {
  const double theta = p.theta ? *p.theta : choose_theta(p.delta, p.L, p.margin);
  const RefutationReport report =
      run_ml_refutation(make_refutation_spec(p.delta, p.L, p.E, theta), p.samples);

  ExperimentResult out;
  const bool saturated = report.saturation_gap <= 1e-8;
  const bool conserved = report.max_norm_energy_deviation <= 1e-9;
  const bool verified = report.violated && saturated && conserved;
  out.exit_code = verified ? kExitOk : kExitClaimViolated;
  json doc = refutation_report_json(report);
  doc["checks"] = {{"violated", report.violated},
                   {"mt_saturated", saturated},
                   {"norm_energy_conserved", conserved}};
  auto report_path = output_path(cfg.output, "_report.json");
  write_json(report_path, doc);
  out.files = {report_path, write_trajectory(cfg.output, cfg.format, report.trajectory)};
  out.summary = doc;
  return out;
}

ExperimentResult run_bd_gap(const ExperimentConfig& cfg, const BdGapParams& p) {
  const HermitianOperator h(p.hamiltonian);
  const PureState u(p.amplitudes);
  const BdGapReport report = run_bd_nonsaturation(h, u, p.delta, p.samples);

  const double gap = report.bounds.mt_closed - report.bounds.bd_closed;
  const bool saturated = report.saturation_gap <= 1e-8;
  const bool bd_strict = report.bounds.bd_closed < report.bounds.tau_actual - 1e-6;
  const bool verified = saturated && bd_strict && report.strict_everywhere && gap > 0.0;

  json doc = bound_report_json(report.bounds);
  doc["gap"] = json_number(gap);
  doc["saturation_gap"] = json_number(report.saturation_gap);
  doc["min_strict_margin"] = json_number(report.min_strict_margin);
  doc["min_occupied"] = report.min_occupied;
  doc["checks"] = {{"mt_saturated", saturated},
                   {"bd_not_saturated", bd_strict},
                   {"strict_bhatia_davies_every_sample", report.strict_everywhere}};

  ExperimentResult out;
  out.exit_code = verified ? kExitOk : kExitClaimViolated;
  auto report_path = output_path(cfg.output, "_report.json");
  write_json(report_path, doc);
  out.files = {report_path, write_trajectory(cfg.output, cfg.format, report.trajectory)};
  out.summary = doc;
  return out;
}

ExperimentResult run_trajectory(const ExperimentConfig& cfg, const TrajectoryParams& p) {
  const RotatedHamiltonianSystem sys = off_equator_family(p.E, p.theta, p.polar_deg);
  const Trajectory traj = sample_trajectory(sys, p.t_max, p.samples, p.picture);

  std::vector<double> bloch_x;
  for (const auto& s : traj.samples) bloch_x.push_back((*s.bloch)[0]);
  const double bloch_x_spread = spread(bloch_x);
  const double conserved_spread =
      std::max({spread(traj.column(&TrajectorySample::exp_energy)),
                spread(traj.column(&TrajectorySample::energy_uncertainty)),
                spread(traj.column(&TrajectorySample::norm_energy)),
                spread(traj.column(&TrajectorySample::dual_norm_energy))});

  const auto profile = energy_profile(p.E, p.profile_thetas);
  double profile_error = 0.0;
  double profile_norm_error = 0.0;
  std::ostringstream csv;
  json rows = json::array();
  csv << "theta,mu,energy_uncertainty,norm_energy,e_cot_half_theta\n";
  for (const auto& row : profile) {
    profile_error = std::max(profile_error, std::abs(row.energy_uncertainty - row.closed_form));
    profile_norm_error = std::max(profile_norm_error, std::abs(row.norm_energy - p.E));
    csv << format_double(row.theta) << ',' << format_double(row.mu) << ','
        << format_double(row.energy_uncertainty) << ',' << format_double(row.norm_energy) << ','
        << format_double(row.closed_form) << '\n';
    rows.push_back({{"theta", json_number(row.theta)},
                    {"mu", json_number(row.mu)},
                    {"energy_uncertainty", json_number(row.energy_uncertainty)},
                    {"norm_energy", json_number(row.norm_energy)},
                    {"e_cot_half_theta", json_number(row.closed_form)}});
  }

  const bool circle = p.picture != Picture::Rotating || bloch_x_spread <= 1e-9;
  // Off the x axis the start does not commute with H - A, so the energy
  // observables are only expected to stay constant for the on-axis start.
  const bool conserving = sys.conserves_occupations();
  const bool conserved = !conserving || conserved_spread <= 1e-9;
  const bool profile_ok = profile_error <= 1e-10 && profile_norm_error <= 1e-10;

  ExperimentResult out;
  out.exit_code = circle && conserved && profile_ok ? kExitOk : kExitClaimViolated;
  out.summary = {{"kind", "trajectory"},
                 {"theta", json_number(p.theta)},
                 {"E", json_number(p.E)},
                 {"polar_deg", json_number(p.polar_deg)},
                 {"picture", p.picture == Picture::Rotating ? "rotating" : "schrodinger"},
                 {"t_max", json_number(p.t_max)},
                 {"samples", p.samples},
                 {"bloch_x_spread", json_number(bloch_x_spread)},
                 {"conserves_occupations", conserving},
                 {"conserved_spread", json_number(conserved_spread)},
                 {"profile_max_error", json_number(profile_error)},
                 {"profile_norm_energy_error", json_number(profile_norm_error)},
                 {"checks",
                  {{"rotating_frame_circle", circle},
                   {"observables_conserved", conserved},
                   {"energy_profile", profile_ok}}}};
  out.files = {write_trajectory(cfg.output, cfg.format, traj),
               write_table(cfg.output, "profile", cfg.format, csv.str(), rows)};
  auto summary_path = output_path(cfg.output, "_summary.json");
  write_json(summary_path, out.summary);
  out.files.push_back(summary_path);
  return out;
}

ExperimentResult run_alpha_table(const ExperimentConfig& cfg, const AlphaTableParams& p) {
  const auto table = alpha_table(p.deltas);
  std::ostringstream csv;
  json rows = json::array();
  bool ok = true;
  csv << "delta,alpha,arccos_sqrt_delta,endpoint_value,nonincreasing,below_mt\n";
  for (const auto& row : table) {
    const bool interior = row.delta > 0.0 && row.delta < 1.0;
    ok = ok && row.nonincreasing && (!interior || row.below_mt) &&
         row.alpha <= row.endpoint_value + 1e-12;
    csv << format_double(row.delta) << ',' << format_double(row.alpha) << ','
        << format_double(row.arccos_sqrt_delta) << ',' << format_double(row.endpoint_value) << ','
        << (row.nonincreasing ? 1 : 0) << ',' << (row.below_mt ? 1 : 0) << '\n';
    rows.push_back({{"delta", json_number(row.delta)},
                    {"alpha", json_number(row.alpha)},
                    {"arccos_sqrt_delta", json_number(row.arccos_sqrt_delta)},
                    {"endpoint_value", json_number(row.endpoint_value)},
                    {"nonincreasing", row.nonincreasing},
                    {"below_mt", row.below_mt}});
  }
  ExperimentResult out;
  out.exit_code = ok ? kExitOk : kExitClaimViolated;
  out.files = {write_table(cfg.output, "alpha", cfg.format, csv.str(), rows)};
  out.summary = {{"kind", "alpha-table"},
                 {"rows", table.size()},
                 {"checks", {{"alpha_properties", ok}}}};
  return out;
}

ExperimentResult run_sweep(const ExperimentConfig& cfg, const SweepParams& p) {
  const SweepResult result = run_validity_sweep(p);
  std::ostringstream csv;
  json rows = json::array();
  csv << "system,dim,coupling,delta,reached,tau,mt,ml,bd,mt_closed,bd_closed,violations\n";
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    std::string violations;
    for (const auto& v : row.violations) violations += (violations.empty() ? "" : ";") + v;
    csv << row.system << ',' << row.dim << ',' << to_string(row.coupling) << ','
        << format_double(row.delta) << ',' << (row.reached ? 1 : 0) << ',';
    if (row.reached) {
      csv << format_double(r.tau_actual) << ',' << (r.mt ? format_double(*r.mt) : "") << ','
          << (r.ml ? format_double(*r.ml) : "") << ',' << (r.bd ? format_double(*r.bd) : "")
          << ',' << format_double(r.mt_closed) << ',' << format_double(r.bd_closed);
    } else {
      csv << ",,,,,";
    }
    csv << ',' << violations << '\n';
    json j = {{"system", row.system},
              {"dim", row.dim},
              {"coupling", to_string(row.coupling)},
              {"delta", json_number(row.delta)},
              {"reached", row.reached},
              {"violations", row.violations}};
    if (row.reached) j["bounds"] = bound_report_json(r);
    rows.push_back(std::move(j));
  }
  ExperimentResult out;
  out.exit_code = result.violations == 0 ? kExitOk : kExitClaimViolated;
  out.summary = {{"kind", "validity-sweep"},
                 {"seed", p.seed},
                 {"systems", p.systems},
                 {"cells_reached", result.reached},
                 {"cells_unreached", result.unreached},
                 {"violations", result.violations}};
  out.files = {write_table(cfg.output, "sweep", cfg.format, csv.str(), rows)};
  auto summary_path = output_path(cfg.output, "_summary.json");
  write_json(summary_path, out.summary);
  out.files.push_back(summary_path);
  return out;
}

int exit_code_for(ErrorCode code) {
  return is_numerical_failure(code) ? kExitNumericalFailure : kExitInvalidInput;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::RefuteMl: return "refute-ml";
    case ExperimentKind::BdGap: return "bd-gap";
    case ExperimentKind::Trajectory: return "trajectory";
    case ExperimentKind::AlphaTable: return "alpha-table";
    case ExperimentKind::ValiditySweep: return "validity-sweep";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::RefuteMl, ExperimentKind::BdGap, ExperimentKind::Trajectory,
                    ExperimentKind::AlphaTable, ExperimentKind::ValiditySweep}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown experiment kind '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidConfig, "format must be 'csv' or 'json'");
}

ExperimentConfig parse_config(ExperimentKind kind, const json& config,
                              std::optional<std::uint64_t> seed_override) {
  ConfigReader r(config);
  ExperimentConfig cfg;
  cfg.kind = kind;
  if (r.has("kind")) {
    require(parse_kind(r.string("kind", "")) == kind, ErrorCode::InvalidConfig,
            "config kind does not match subcommand " + std::string(to_string(kind)));
  }
  cfg.output = r.string("output", std::string(to_string(kind)));
  require(!cfg.output.empty(), ErrorCode::InvalidConfig, "output prefix is empty");
  cfg.format = parse_format(r.string("format", "csv"));

  switch (kind) {
    case ExperimentKind::RefuteMl: cfg.params = parse_refute_ml(r); break;
    case ExperimentKind::BdGap: cfg.params = parse_bd_gap(r); break;
    case ExperimentKind::Trajectory: cfg.params = parse_trajectory(r); break;
    case ExperimentKind::AlphaTable: cfg.params = parse_alpha_table(r); break;
    case ExperimentKind::ValiditySweep: cfg.params = parse_sweep(r, seed_override); break;
  }
  // Only the sweep is random; elsewhere the seed is accepted and unused.
  if (kind != ExperimentKind::ValiditySweep) r.integer("seed", 0);
  r.reject_unknown();
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result = std::visit(
      [&config](const auto& p) -> ExperimentResult {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RefuteMlParams>) return run_refute_ml(config, p);
        if constexpr (std::is_same_v<T, BdGapParams>) return run_bd_gap(config, p);
        if constexpr (std::is_same_v<T, TrajectoryParams>) return run_trajectory(config, p);
        if constexpr (std::is_same_v<T, AlphaTableParams>) return run_alpha_table(config, p);
        if constexpr (std::is_same_v<T, SweepParams>) return run_sweep(config, p);
      },
      config.params);
  result.summary["exit_code"] = result.exit_code;
  json files = json::array();
  for (const auto& f : result.files) files.push_back(f.string());
  result.summary["files"] = files;
  return result;
}

int run_cli(std::string_view subcommand, const std::filesystem::path& config_path,
            const std::optional<std::string>& out_prefix,
            const std::optional<std::string>& format, std::ostream& out, std::ostream& err) {
  auto fail = [&err](int code, std::string_view kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
    return code;
  };
  try {
    const ExperimentKind kind = parse_kind(subcommand);
    std::ifstream is(config_path);
    require(static_cast<bool>(is), ErrorCode::InvalidConfig,
            "cannot read config " + config_path.string());
    json doc;
    try {
      doc = json::parse(is);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }

    std::optional<std::uint64_t> seed;
    if (const char* env = std::getenv("QSL_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long value = std::strtoull(env, &end, 10);
      require(end != nullptr && *end == '\0' && *env != '-', ErrorCode::InvalidConfig,
              "QSL_SEED must be a non-negative integer");
      seed = value;
    }

    ExperimentConfig cfg = parse_config(kind, doc, seed);
    if (out_prefix) {
      require(!out_prefix->empty(), ErrorCode::InvalidConfig, "--out prefix is empty");
      cfg.output = *out_prefix;
    }
    if (format) cfg.format = parse_format(*format);

    const ExperimentResult result = run_experiment(cfg);
    out << result.summary.dump(2) << '\n';
    return result.exit_code;
  } catch (const Error& e) {
    return fail(exit_code_for(e.code()), to_string(e.code()), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitInvalidInput, "IOError", e.what());
  } catch (const std::exception& e) {
    return fail(kExitNumericalFailure, "InternalError", e.what());
  }
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json json_number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "NaN";
  return value > 0 ? "Infinity" : "-Infinity";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : traj.samples) {
    os << format_double(s.t) << ',' << format_double(s.fidelity) << ','
       << format_double(s.exp_energy) << ',' << format_double(s.energy_uncertainty) << ','
       << format_double(s.eps_min) << ',' << format_double(s.eps_max) << ','
       << format_double(s.norm_energy) << ',' << format_double(s.dual_norm_energy);
    if (s.bloch) {
      os << ',' << format_double((*s.bloch)[0]) << ',' << format_double((*s.bloch)[1]) << ','
         << format_double((*s.bloch)[2]);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

json trajectory_json(const Trajectory& traj) {
  json rows = json::array();
  for (const auto& s : traj.samples) {
    json row = {{"t", json_number(s.t)},
                {"fidelity", json_number(s.fidelity)},
                {"exp_energy", json_number(s.exp_energy)},
                {"energy_uncertainty", json_number(s.energy_uncertainty)},
                {"eps_min", json_number(s.eps_min)},
                {"eps_max", json_number(s.eps_max)},
                {"norm_energy", json_number(s.norm_energy)},
                {"dual_norm_energy", json_number(s.dual_norm_energy)},
                {"occupied_count", s.occupied_count},
                {"occupations", s.occupations}};
    if (s.bloch) {
      row["bloch_x"] = (*s.bloch)[0];
      row["bloch_y"] = (*s.bloch)[1];
      row["bloch_z"] = (*s.bloch)[2];
    }
    rows.push_back(std::move(row));
  }
  return {{"picture", traj.picture == Picture::Rotating ? "rotating" : "schrodinger"},
          {"samples", rows}};
}

json bound_report_json(const BoundReport& r) {
  return {{"delta", json_number(r.delta)},
          {"tau_actual", json_number(r.tau_actual)},
          {"isolated", r.isolated},
          {"mt", r.mt ? json_number(*r.mt) : json(nullptr)},
          {"ml", r.ml ? json_number(*r.ml) : json(nullptr)},
          {"bd", r.bd ? json_number(*r.bd) : json(nullptr)},
          {"mt_closed", json_number(r.mt_closed)},
          {"bd_closed", json_number(r.bd_closed)},
          {"avg_uncertainty", json_number(r.avg_uncertainty)},
          {"avg_bd_factor", json_number(r.avg_bd_factor)},
          {"avg_norm_energy", json_number(r.avg_norm_energy)}};
}

json refutation_report_json(const RefutationReport& r) {
  return {{"kind", "refute-ml"},
          {"spec",
           {{"delta", json_number(r.spec.delta)},
            {"L", json_number(r.spec.L)},
            {"E", json_number(r.spec.E)},
            {"theta", json_number(r.spec.theta)},
            {"mu", json_number(r.spec.mu)}}},
          {"tau", json_number(r.tau)},
          {"hypothetical_bound", json_number(r.hypothetical_bound)},
          {"mt_closed", json_number(r.mt_closed)},
          {"violated", r.violated},
          {"bound_margin", json_number(r.bound_margin)},
          {"saturation_gap", json_number(r.saturation_gap)},
          {"energy_uncertainty", json_number(r.energy_uncertainty)},
          {"max_norm_energy_deviation", json_number(r.max_norm_energy_deviation)}};
}

std::vector<AlphaRow> alpha_table(std::vector<double> deltas) {
  require(!deltas.empty(), ErrorCode::InvalidConfig, "alpha grid is empty");
  std::sort(deltas.begin(), deltas.end());
  std::vector<AlphaRow> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) {
    AlphaRow row;
    row.delta = d;
    row.alpha = alpha(d);
    row.arccos_sqrt_delta = fubini_study_distance(d);
    row.endpoint_value = (1.0 - std::sqrt(d)) * kPi / 2;
    row.nonincreasing = rows.empty() || row.alpha <= rows.back().alpha + 1e-12;
    row.below_mt = row.alpha < row.arccos_sqrt_delta - 1e-12;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsl
