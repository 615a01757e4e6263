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

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsl/evolution.hpp"

namespace qsl {

/// Bounds that cannot be finite (stationary state, no energy above the
/// ground of the occupied band) are reported as +infinity, not as errors.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// Stationarity threshold on energy-type denominators.
inline constexpr double kZeroSpeed = 1e-14;

/// Fubini-Study distance arccos(sqrt(delta)) for fidelity delta.
double fubini_study_distance(double delta);

/// ((1 + z) / 2) * arccos((2 delta - 1 - z^2) / (1 - z^2)), with the arccos
/// argument written as 1 - 2(1 - delta)/(1 - z^2) and clamped to [-1, 1].
double alpha_objective(double z, double delta);

/// Minimum of alpha_objective over z in [-sqrt(delta), sqrt(delta)]:
/// 2048-point bracketing grid, golden-section refinement to width 1e-12,
/// then compared against both endpoints.
double alpha(double delta);

/// Trapezoidal mean (integral / (t_end - t_0)).
double time_average(std::span<const double> times, std::span<const double> values);

/// numerator / denominator with the conventions used by every bound:
/// zero numerator gives 0, a denominator at or below kZeroSpeed gives
/// kInfinite.
double bound_ratio(double numerator, double denominator);

double mt_isolated(const HermitianOperator& h, const PureState& s, double delta);
double ml_isolated(const HermitianOperator& h, const PureState& s, double delta);
double bd_isolated(const HermitianOperator& h, const PureState& s, double delta);

/// Closed-system bounds; the averaging window is the trajectory's time span.
double mt_closed(const Trajectory& traj, double delta);
double bd_closed(const Trajectory& traj, double delta);

struct FirstPassageOptions {
  /// Coarse samples on [0, t_max]; 0 picks a count from the dynamics' time
  /// scale (at least 2000).
  int coarse_samples = 0;
  double fidelity_tol = 1e-10;
};

/// Earliest t in [0, t_max] with fidelity(rho_t, rho_0) = delta. Crossings
/// are bracketed on the coarse grid and bisected; tangential touches (e.g.
/// delta = 0 on a geodesic) are located by golden-section minimization of
/// the overlap modulus. Throws NotReached otherwise.
double first_passage(const RotatedHamiltonianSystem& sys, double delta, double t_max,
                     const FirstPassageOptions& options = {});

struct BoundReport {
  double delta = 0.0;
  double tau_actual = 0.0;
  bool isolated = false;
  // The isolated-system formulas use t = 0 data, so they are reported only
  // when the system conserves its level occupations.
  std::optional<double> mt;
  std::optional<double> ml;  // only for isolated systems
  std::optional<double> bd;
  double mt_closed = 0.0;
  double bd_closed = 0.0;
  double avg_uncertainty = 0.0;
  double avg_bd_factor = 0.0;
  double avg_norm_energy = 0.0;
};

/// Measures tau(delta) and evaluates every bound over the window
/// [0, tau(delta)] sampled at n + 1 points.
BoundReport evaluate_bounds(const RotatedHamiltonianSystem& sys, double delta, double t_max,
                            int n = 1000, const FirstPassageOptions& options = {});

/// Same, but reuses a trajectory already sampled on [0, tau].
BoundReport evaluate_bounds(const RotatedHamiltonianSystem& sys, double delta, double tau,
                            const Trajectory& window);

/// Names of bounds exceeding tau_actual + tol, plus "mt_closed<bd_closed"
/// if the ordering invariant is broken.
std::vector<std::string> bound_violations(const BoundReport& report, double tol = 1e-9);

}  // namespace qsl
