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

#include <optional>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/evolution.hpp"

namespace qsl {

/// Parameters of one member of the Margolus-Levitin refutation family.
struct RefutationSpec {
  double delta = 0.0;  // target fidelity, [0, 1)
  double L = 0.0;      // hypothetical numerator L(delta) > 0
  double E = 1.0;      // conserved normalized expected energy
  double theta = 0.0;  // (0, pi)
  double mu = 0.0;     // E / (1 - cos theta)
};

/// Validates ranges and the strict inequality cot(theta/2) > arccos(sqrt(delta)) / L.
RefutationSpec make_refutation_spec(double delta, double L, double E, double theta);

struct RefutationReport {
  RefutationSpec spec;
  double tau = 0.0;                 // measured first-passage time
  double hypothetical_bound = 0.0;  // L / E
  double mt_closed = 0.0;
  bool violated = false;
  double bound_margin = 0.0;     // hypothetical_bound - tau
  double saturation_gap = 0.0;   // |tau - mt_closed|
  double energy_uncertainty = 0.0;
  double max_norm_energy_deviation = 0.0;  // max |<H_t - eps_min;t> - E| over samples
  Trajectory trajectory;                   // sampled on [0, tau]
};

/// A = (H - <u|H|u>)|u><u| + |u><u|(H - <u|H|u>). For rho = |u><u| this gives
/// [H - A, rho] = 0 and A rho + rho A = A, so rho_t follows a geodesic.
HermitianOperator build_coupling(const HermitianOperator& h, const PureState& u);

double ml_family_mu(double E, double theta);

/// H_theta = mu(theta)(sin(theta) Z - cos(theta) X) on span{u, v} with
/// v = perpendicular(u), coupled through build_coupling(H_theta, u). The
/// system starts in `initial` (default u) and carries the (u, v) Bloch frame.
RotatedHamiltonianSystem build_ml_family(double E, double theta, const PureState& u,
                                         std::optional<PureState> initial = std::nullopt);

/// Two-level member with u = e_0.
RotatedHamiltonianSystem build_ml_family(double E, double theta);

inline constexpr double kDefaultThetaMargin = 0.1;

/// theta = 2 arctan(1 / (c (1 + margin))) with c = arccos(sqrt(delta)) / L,
/// so cot(theta/2) = c (1 + margin) > c.
double choose_theta(double delta, double L, double margin = kDefaultThetaMargin);

RefutationReport run_ml_refutation(const RefutationSpec& spec, int samples = 1000);
RefutationReport run_ml_refutation(double delta, double L, double E,
                                   double margin = kDefaultThetaMargin, int samples = 1000);

struct BdGapReport {
  BoundReport bounds;
  double saturation_gap = 0.0;  // |tau - mt_closed|
  /// min over samples of <eps_max - H_t><H_t - eps_min> - Delta^2 H_t
  double min_strict_margin = 0.0;
  bool strict_everywhere = false;
  int min_occupied = 0;
  Trajectory trajectory;  // sampled on [0, tau]
};

/// Closed system (H, build_coupling(H, u), u) where u occupies at least three
/// levels of H. Throws InsufficientLevels otherwise.
BdGapReport run_bd_nonsaturation(const HermitianOperator& h, const PureState& u, double delta,
                                 int samples = 1000);

struct EnergyProfileRow {
  double theta = 0.0;
  double mu = 0.0;
  double energy_uncertainty = 0.0;  // measured on H_theta and u
  double norm_energy = 0.0;         // measured
  double closed_form = 0.0;         // E cot(theta / 2)
};

std::vector<EnergyProfileRow> energy_profile(double E, const std::vector<double>& thetas);

/// Default off-equator start: Bloch vector at 60 degrees from +x, tilted
/// toward +z.
inline constexpr double kDefaultPolarDegrees = 60.0;

RotatedHamiltonianSystem off_equator_family(double E, double theta,
                                            double polar_degrees = kDefaultPolarDegrees);

}  // namespace qsl
