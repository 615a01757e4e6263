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

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "qsl/linalg.hpp"

namespace qsl {

/// Reference pair (u, v) for Bloch coordinates on a two-level system:
/// X = |u><u| - |v><v|, Z = |u><v| + |v><u|, Y = i(|u><v| - |v><u|).
/// With this convention |u> sits on the positive x axis.
struct BlochFrame {
  PureState u;
  PureState v;
};

std::array<double, 3> bloch_vector(const BlochFrame& frame, const PureState& s);

/// State in span{u, v} whose Bloch vector (relative to `frame`) points along
/// (x, y, z). The direction is normalized.
PureState state_from_bloch(const BlochFrame& frame, double x, double y, double z);

/// Closed system driven by H_t = e^{-iAt} H e^{iAt}, started from `initial`.
class RotatedHamiltonianSystem {
 public:
  RotatedHamiltonianSystem(HermitianOperator hamiltonian, HermitianOperator coupling,
                           PureState initial, std::optional<BlochFrame> frame = std::nullopt);

  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const HermitianOperator& coupling() const { return coupling_; }
  /// H - A, the generator in the rotating frame.
  const HermitianOperator& rotating_generator() const { return rotating_generator_; }
  const PureState& initial() const { return initial_; }
  Eigen::Index dim() const { return hamiltonian_.dim(); }

  /// Bloch frame for dim 2: the explicit one if given, otherwise
  /// (initial, perpendicular(initial)).
  std::optional<BlochFrame> bloch_frame() const;

  Matrix hamiltonian_matrix_at(double t) const;
  HermitianOperator hamiltonian_at(double t) const;

  /// True when the coupling is numerically zero, so the system is isolated.
  bool is_isolated(double tol = 1e-14) const;
  /// True when level occupations stay constant: A = 0 or [H - A, rho] = 0.
  /// Then Delta H_t and the normalized energies are conserved as well.
  bool conserves_occupations(double tol = 1e-10) const;

  RotatedHamiltonianSystem with_initial(PureState initial) const;

 private:
  HermitianOperator hamiltonian_;
  HermitianOperator coupling_;
  HermitianOperator rotating_generator_;
  PureState initial_;
  std::optional<BlochFrame> frame_;
};

/// e^{-iAt} e^{-i(H-A)t} |initial>.
PureState propagate_exact(const RotatedHamiltonianSystem& sys, double t);

/// Right-hand side generator for the step integrator: returns H(t).
using GeneratorFn = std::function<Matrix(double)>;

/// Fixed-step classical Runge-Kutta integration of d|psi>/dt = -i H(t)|psi>
/// with renormalization after every step. The step is shrunk so that it
/// divides t evenly. Throws StepTooLarge if a step changes the norm by more
/// than `max_norm_drift` before renormalization.
Vector integrate_schrodinger(const GeneratorFn& generator, const Vector& initial, double t,
                             double step, double max_norm_drift = 1e-6);

PureState propagate_numeric(const RotatedHamiltonianSystem& sys, double t, double step);

/// e^{iAt} |state_at_t>
PureState rotating_frame(const RotatedHamiltonianSystem& sys, double t,
                         const PureState& state_at_t);

enum class Picture { Schrodinger, Rotating };

struct TrajectorySample {
  double t = 0.0;
  double fidelity = 1.0;            // to the initial state
  double exp_energy = 0.0;          // <H_t>
  double energy_uncertainty = 0.0;  // Delta H_t
  double eps_min = 0.0;
  double eps_max = 0.0;
  double norm_energy = 0.0;       // <H_t - eps_min;t>
  double dual_norm_energy = 0.0;  // <eps_max;t - H_t>
  int occupied_count = 0;
  std::vector<double> occupations;  // per level of H_t, ascending energy
  std::optional<std::array<double, 3>> bloch;
};

/// Time-sampled evolution record. `states` are in `picture`; every
/// observable is evaluated on the Schrodinger-picture state against the
/// instantaneous H_t, and `fidelity` is always the physical fidelity to the
/// initial state. Bloch coordinates follow `picture`.
struct Trajectory {
  Picture picture = Picture::Schrodinger;
  std::vector<PureState> states;
  std::vector<TrajectorySample> samples;

  std::vector<double> times() const;
  std::vector<double> column(double TrajectorySample::*field) const;
};

TrajectorySample observe(const RotatedHamiltonianSystem& sys, double t, const PureState& state,
                         double occupation_tol = kOccupationTol);

/// n + 1 uniform samples on [0, t_max].
Trajectory sample_trajectory(const RotatedHamiltonianSystem& sys, double t_max, int n,
                             Picture picture = Picture::Schrodinger);

/// Same as sample_trajectory but on [t_begin, t_end].
Trajectory sample_window(const RotatedHamiltonianSystem& sys, double t_begin, double t_end, int n,
                         Picture picture = Picture::Schrodinger);

}  // namespace qsl
