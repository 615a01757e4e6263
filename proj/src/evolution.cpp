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

#include "qsl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace qsl {

std::array<double, 3> bloch_vector(const BlochFrame& frame, const PureState& s) {
  check_dims(frame.u.dim(), s.dim(), "bloch_vector");
  const Complex a = frame.u.amplitudes().dot(s.amplitudes());
  const Complex b = frame.v.amplitudes().dot(s.amplitudes());
  // <X> = |a|^2 - |b|^2, <Z> = 2 Re(conj(a) b), <Y> = i(conj(a) b - conj(b) a) = -2 Im(conj(a) b)
  const Complex ab = std::conj(a) * b;
  return {std::norm(a) - std::norm(b), -2.0 * ab.imag(), 2.0 * ab.real()};
}

PureState state_from_bloch(const BlochFrame& frame, double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  require(r > 0.0, ErrorCode::DomainError, "Bloch direction must be nonzero");
  x /= r;
  y /= r;
  z /= r;
  // cos(beta/2)|u> + e^{i phi} sin(beta/2)|v> has <X> = cos(beta),
  // <Z> = sin(beta) cos(phi), <Y> = -sin(beta) sin(phi).
  const double beta = std::acos(std::clamp(x, -1.0, 1.0));
  const double phi = std::atan2(-y, z);
  const Vector amps = std::cos(beta / 2) * frame.u.amplitudes() +
                      std::polar(std::sin(beta / 2), phi) * frame.v.amplitudes();
  return PureState(amps);
}

RotatedHamiltonianSystem::RotatedHamiltonianSystem(HermitianOperator hamiltonian,
                                                   HermitianOperator coupling, PureState initial,
                                                   std::optional<BlochFrame> frame)
    : hamiltonian_(std::move(hamiltonian)),
      coupling_(std::move(coupling)),
      rotating_generator_(hamiltonian_ - coupling_),
      initial_(std::move(initial)),
      frame_(std::move(frame)) {
  check_dims(hamiltonian_.dim(), initial_.dim(), "RotatedHamiltonianSystem");
  if (frame_) {
    check_dims(frame_->u.dim(), dim(), "RotatedHamiltonianSystem frame");
    check_dims(frame_->v.dim(), dim(), "RotatedHamiltonianSystem frame");
  }
}

std::optional<BlochFrame> RotatedHamiltonianSystem::bloch_frame() const {
  if (dim() != 2) return std::nullopt;
  if (frame_) return frame_;
  return BlochFrame{initial_, perpendicular(initial_)};
}

Matrix RotatedHamiltonianSystem::hamiltonian_matrix_at(double t) const {
  const Matrix v = unitary_exp(coupling_, t);
  return v * hamiltonian_.matrix() * v.adjoint();
}

HermitianOperator RotatedHamiltonianSystem::hamiltonian_at(double t) const {
  const Matrix m = hamiltonian_matrix_at(t);
  return HermitianOperator(Matrix((m + m.adjoint()) * 0.5));
}

bool RotatedHamiltonianSystem::is_isolated(double tol) const { return coupling_.norm() <= tol; }

bool RotatedHamiltonianSystem::conserves_occupations(double tol) const {
  if (is_isolated()) return true;
  const double scale = rotating_generator().spectral_radius() + 1.0;
  return commutator_norm(rotating_generator().matrix(), initial_.density()) <= tol * scale;
}

RotatedHamiltonianSystem RotatedHamiltonianSystem::with_initial(PureState initial) const {
  return RotatedHamiltonianSystem(hamiltonian_, coupling_, std::move(initial), frame_);
}

PureState propagate_exact(const RotatedHamiltonianSystem& sys, double t) {
  if (t == 0.0) return sys.initial();
  const Vector rotated = apply_unitary_exp(sys.rotating_generator(), t, sys.initial().amplitudes());
  return PureState(apply_unitary_exp(sys.coupling(), t, rotated));
}

Vector integrate_schrodinger(const GeneratorFn& generator, const Vector& initial, double t,
                             double step, double max_norm_drift) {
  require(step > 0.0, ErrorCode::DomainError, "step must be positive");
  require(t >= 0.0, ErrorCode::DomainError, "integration time must be non-negative");
  Vector psi = initial;
  if (t == 0.0) return psi;

  const auto steps = static_cast<long>(std::ceil(t / step - 1e-12));
  const double h = t / static_cast<double>(steps);
  const Complex mi(0.0, -1.0);
  auto rhs = [&](double time, const Vector& y) -> Vector { return mi * (generator(time) * y); };

  for (long k = 0; k < steps; ++k) {
    const double t0 = h * static_cast<double>(k);
    const Vector k1 = rhs(t0, psi);
    const Vector k2 = rhs(t0 + h / 2, psi + (h / 2) * k1);
    const Vector k3 = rhs(t0 + h / 2, psi + (h / 2) * k2);
    const Vector k4 = rhs(t0 + h, psi + h * k3);
    const double before = psi.norm();
    psi += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double after = psi.norm();
    if (std::abs(after - before) > max_norm_drift) {
      throw Error(ErrorCode::StepTooLarge,
                  "norm drift " + std::to_string(std::abs(after - before)) + " at t=" +
                      std::to_string(t0 + h));
    }
    psi /= after;
  }
  return psi;
}

PureState propagate_numeric(const RotatedHamiltonianSystem& sys, double t, double step) {
  require(step > 0.0, ErrorCode::DomainError, "step must be positive");
  require(t >= 0.0, ErrorCode::DomainError, "t must be non-negative");
  if (t == 0.0) return sys.initial();
  const GeneratorFn generator = [&sys](double time) { return sys.hamiltonian_matrix_at(time); };
  return PureState(integrate_schrodinger(generator, sys.initial().amplitudes(), t, step));
}

PureState rotating_frame(const RotatedHamiltonianSystem& sys, double t,
                         const PureState& state_at_t) {
  check_dims(sys.dim(), state_at_t.dim(), "rotating_frame");
  if (t == 0.0) return state_at_t;
  return PureState(apply_unitary_exp(sys.coupling(), -t, state_at_t.amplitudes()));
}

std::vector<double> Trajectory::times() const { return column(&TrajectorySample::t); }

std::vector<double> Trajectory::column(double TrajectorySample::*field) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.*field);
  return out;
}

TrajectorySample observe(const RotatedHamiltonianSystem& sys, double t, const PureState& state,
                         double occupation_tol) {
  const HermitianOperator h_t = sys.hamiltonian_at(t);
  TrajectorySample out;
  out.t = t;
  out.fidelity = fidelity(sys.initial(), state);
  out.exp_energy = expectation(h_t, state);
  out.energy_uncertainty = uncertainty(h_t, state);
  const OccupiedExtrema ext = occupied_extrema(h_t, state, occupation_tol);
  out.eps_min = ext.eps_min;
  out.eps_max = ext.eps_max;
  out.occupied_count = ext.occupied_count;
  out.norm_energy = out.exp_energy - ext.eps_min;
  out.dual_norm_energy = ext.eps_max - out.exp_energy;
  for (const Level& level : level_occupations(h_t, state)) out.occupations.push_back(level.weight);
  return out;
}

Trajectory sample_window(const RotatedHamiltonianSystem& sys, double t_begin, double t_end, int n,
                         Picture picture) {
  require(n >= 2, ErrorCode::DomainError, "need at least 2 intervals");
  require(t_end >= t_begin && t_begin >= 0.0, ErrorCode::DomainError, "invalid time window");
  Trajectory traj;
  traj.picture = picture;
  const auto frame = sys.bloch_frame();
  for (int k = 0; k <= n; ++k) {
    const double t = k == n ? t_end : t_begin + (t_end - t_begin) * k / n;
    const PureState state = propagate_exact(sys, t);
    TrajectorySample sample = observe(sys, t, state);
    PureState stored = picture == Picture::Rotating ? rotating_frame(sys, t, state) : state;
    if (frame) sample.bloch = bloch_vector(*frame, stored);
    traj.samples.push_back(std::move(sample));
    traj.states.push_back(std::move(stored));
  }
  return traj;
}

Trajectory sample_trajectory(const RotatedHamiltonianSystem& sys, double t_max, int n,
                             Picture picture) {
  require(t_max > 0.0, ErrorCode::DomainError, "t_max must be positive");
  return sample_window(sys, 0.0, t_max, n, picture);
}

}  // namespace qsl
