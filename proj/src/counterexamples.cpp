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

#include "qsl/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

void check_family_params(double E, double theta) {
  require(std::isfinite(E) && E > 0.0, ErrorCode::DomainError, "E must be positive");
  require(theta > 0.0 && theta < kPi, ErrorCode::DomainError,
          "theta must lie in (0, pi), got " + std::to_string(theta));
}

void check_refutation_params(double delta, double L) {
  require(delta >= 0.0 && delta < 1.0, ErrorCode::DomainError,
          "delta must lie in [0, 1), got " + std::to_string(delta));
  require(std::isfinite(L) && L > 0.0, ErrorCode::DomainError, "L must be positive");
}

// Orthogonalization happens no later than pi / (2 Delta H) on a geodesic;
// one full half-period gives the search some headroom.
double geodesic_horizon(const RotatedHamiltonianSystem& sys) {
  const double speed = uncertainty(sys.hamiltonian(), sys.initial());
  require(speed > kZeroSpeed, ErrorCode::DomainError, "initial state is stationary");
  return kPi / speed;
}

}  // namespace

RefutationSpec make_refutation_spec(double delta, double L, double E, double theta) {
  check_refutation_params(delta, L);
  check_family_params(E, theta);
  const double c = std::acos(std::sqrt(delta)) / L;
  require(1.0 / std::tan(theta / 2) > c, ErrorCode::DomainError,
          "theta too large: cot(theta/2) must exceed arccos(sqrt(delta))/L");
  return RefutationSpec{delta, L, E, theta, ml_family_mu(E, theta)};
}

HermitianOperator build_coupling(const HermitianOperator& h, const PureState& u) {
  check_dims(h.dim(), u.dim(), "build_coupling");
  const Vector& a = u.amplitudes();
  // (H - <H>)|u>; the coupling is w u^dagger + u w^dagger.
  const Vector w = h.matrix() * a - expectation(h, u) * a;
  return HermitianOperator(Matrix(w * a.adjoint() + a * w.adjoint()));
}

double ml_family_mu(double E, double theta) {
  check_family_params(E, theta);
  return E / (1.0 - std::cos(theta));
}

RotatedHamiltonianSystem build_ml_family(double E, double theta, const PureState& u,
                                         std::optional<PureState> initial) {
  const double mu = ml_family_mu(E, theta);
  require(u.dim() >= 2, ErrorCode::DimensionMismatch, "need dimension at least 2");
  const PureState v = perpendicular(u);
  const Vector& a = u.amplitudes();
  const Vector& b = v.amplitudes();
  const Matrix x = a * a.adjoint() - b * b.adjoint();
  const Matrix z = a * b.adjoint() + b * a.adjoint();
  const HermitianOperator h(Matrix(mu * (std::sin(theta) * z - std::cos(theta) * x)));
  HermitianOperator coupling = build_coupling(h, u);
  PureState start = initial.value_or(u);
  return RotatedHamiltonianSystem(h, std::move(coupling), std::move(start), BlochFrame{u, v});
}

RotatedHamiltonianSystem build_ml_family(double E, double theta) {
  return build_ml_family(E, theta, PureState::basis(2, 0));
}

double choose_theta(double delta, double L, double margin) {
  check_refutation_params(delta, L);
  require(std::isfinite(margin) && margin > 0.0, ErrorCode::DomainError,
          "margin must be positive");
  const double c = std::acos(std::sqrt(delta)) / L;
  return 2.0 * std::atan(1.0 / (c * (1.0 + margin)));
}

RefutationReport run_ml_refutation(const RefutationSpec& spec, int samples) {
  const RefutationSpec checked = make_refutation_spec(spec.delta, spec.L, spec.E, spec.theta);
  const RotatedHamiltonianSystem sys = build_ml_family(checked.E, checked.theta);

  RefutationReport report;
  report.spec = checked;
  report.energy_uncertainty = uncertainty(sys.hamiltonian(), sys.initial());
  report.tau = first_passage(sys, checked.delta, geodesic_horizon(sys));
  report.trajectory = sample_window(sys, 0.0, report.tau, samples);
  report.mt_closed = mt_closed(report.trajectory, checked.delta);
  report.hypothetical_bound = checked.L / checked.E;
  report.bound_margin = report.hypothetical_bound - report.tau;
  report.violated = report.tau < report.hypothetical_bound - 1e-9;
  report.saturation_gap = std::abs(report.tau - report.mt_closed);
  for (const auto& s : report.trajectory.samples) {
    report.max_norm_energy_deviation =
        std::max(report.max_norm_energy_deviation, std::abs(s.norm_energy - checked.E));
  }
  return report;
}

RefutationReport run_ml_refutation(double delta, double L, double E, double margin, int samples) {
  const double theta = choose_theta(delta, L, margin);
  return run_ml_refutation(make_refutation_spec(delta, L, E, theta), samples);
}

BdGapReport run_bd_nonsaturation(const HermitianOperator& h, const PureState& u, double delta,
                                 int samples) {
  check_dims(h.dim(), u.dim(), "run_bd_nonsaturation");
  require(delta >= 0.0 && delta < 1.0, ErrorCode::DomainError, "delta must lie in [0, 1)");
  const int occupied = occupied_extrema(h, u).occupied_count;
  require(occupied >= 3, ErrorCode::InsufficientLevels,
          "state occupies " + std::to_string(occupied) + " levels, need at least 3");

  const RotatedHamiltonianSystem sys(h, build_coupling(h, u), u);
  const double tau = first_passage(sys, delta, geodesic_horizon(sys));

  BdGapReport out;
  out.trajectory = sample_window(sys, 0.0, tau, samples);
  out.bounds = evaluate_bounds(sys, delta, tau, out.trajectory);
  out.saturation_gap = std::abs(tau - out.bounds.mt_closed);
  out.min_strict_margin = kInfinite;
  out.min_occupied = occupied;
  for (const auto& s : out.trajectory.samples) {
    const double margin = s.dual_norm_energy * s.norm_energy -
                          s.energy_uncertainty * s.energy_uncertainty;
    out.min_strict_margin = std::min(out.min_strict_margin, margin);
    out.min_occupied = std::min(out.min_occupied, s.occupied_count);
  }
  out.strict_everywhere = out.min_strict_margin > 0.0 && out.min_occupied >= 3;
  return out;
}

std::vector<EnergyProfileRow> energy_profile(double E, const std::vector<double>& thetas) {
  std::vector<EnergyProfileRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    const RotatedHamiltonianSystem sys = build_ml_family(E, theta);
    EnergyProfileRow row;
    row.theta = theta;
    row.mu = ml_family_mu(E, theta);
    row.energy_uncertainty = uncertainty(sys.hamiltonian(), sys.initial());
    row.norm_energy =
        expectation(sys.hamiltonian(), sys.initial()) -
        occupied_extrema(sys.hamiltonian(), sys.initial()).eps_min;
    row.closed_form = E / std::tan(theta / 2);
    rows.push_back(row);
  }
  return rows;
}

RotatedHamiltonianSystem off_equator_family(double E, double theta, double polar_degrees) {
  const PureState u = PureState::basis(2, 0);
  const BlochFrame frame{u, perpendicular(u)};
  const double polar = polar_degrees * kPi / 180.0;
  const PureState start = state_from_bloch(frame, std::cos(polar), 0.0, std::sin(polar));
  return build_ml_family(E, theta, u, start);
}

}  // namespace qsl
