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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qsl/counterexamples.hpp"
#include "qsl/evolution.hpp"
#include "qsl/sweep.hpp"

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

// Distance between two vectors after removing the best global phase.
double phase_aligned_distance(const Vector& a, const Vector& b) {
  const Complex overlap = a.dot(b);
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a * phase - b).norm();
}

double stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("propagate_exact at t = 0 returns the initial state") {
  Rng rng(1);
  const auto sys = random_system(rng, 4, CouplingKind::Random);
  CHECK((propagate_exact(sys, 0.0).amplitudes() - sys.initial().amplitudes()).norm() == 0.0);
}

TEST_CASE("refutation family fidelity follows cos^2(E cot(theta/2) t)") {
  for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2.0}) {
    const double E = 0.7;
    const auto sys = build_ml_family(E, theta);
    const double speed = E / std::tan(theta / 2);
    const double t_zero = kPi / (2 * speed);
    for (int k = 0; k <= 20; ++k) {
      const double t = t_zero * k / 20.0;
      const double expected = std::pow(std::cos(speed * t), 2);
      CHECK(std::abs(fidelity(sys.initial(), propagate_exact(sys, t)) - expected) < 1e-12);
    }
  }
}

TEST_CASE("zero coupling reduces to isolated evolution") {
  const auto h = HermitianOperator::diagonal({0.0, 0.5, 2.0});
  const PureState u = PureState::uniform(3);
  const RotatedHamiltonianSystem sys(h, HermitianOperator::zero(3), u);
  CHECK(sys.is_isolated());
  const double t = 1.7;
  Vector expected(3);
  for (int k = 0; k < 3; ++k) expected(k) = std::polar(1.0, -h.eigenvalues()(k) * t) / std::sqrt(3.0);
  CHECK((propagate_exact(sys, t).amplitudes() - expected).norm() < 1e-14);
}

TEST_CASE("commuting initial state evolves under the coupling alone") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 5;
    const auto sys = random_system(rng, dim, CouplingKind::Geodesic);
    const double t = 0.1 * trial;
    const Vector expected = unitary_exp(sys.coupling(), t) * sys.initial().amplitudes();
    CHECK(phase_aligned_distance(propagate_exact(sys, t).amplitudes(), expected) < 1e-10);
  }
}

TEST_CASE("propagate_numeric examples") {
  const auto family = build_ml_family(1.0, kPi / 6);
  CHECK((propagate_numeric(family, 0.0, 1e-3).amplitudes() - family.initial().amplitudes())
            .norm() == 0.0);

  const PureState exact = propagate_exact(family, 1.0);
  const PureState numeric = propagate_numeric(family, 1.0, 1e-3);
  CHECK(1.0 - fidelity(exact, numeric) <= 1e-8);

  const RotatedHamiltonianSystem isolated(HermitianOperator::diagonal({0.0, 1.0}),
                                          HermitianOperator::zero(2), PureState::uniform(2));
  const Vector flipped = propagate_numeric(isolated, kPi, 1e-3).amplitudes();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(flipped(0) - Complex(s)) < 1e-8);
  CHECK(std::abs(flipped(1) - Complex(-s)) < 1e-8);
}

TEST_CASE("propagate_numeric rejects steps that break the norm") {
  const RotatedHamiltonianSystem sys(HermitianOperator::diagonal({0.0, 100.0}),
                                     HermitianOperator::zero(2), PureState::uniform(2));
  try {
    propagate_numeric(sys, 1.0, 0.05);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooLarge);
  }
  CHECK_THROWS_AS(propagate_numeric(sys, 1.0, 0.0), Error);
  CHECK_THROWS_AS(propagate_numeric(sys, -1.0, 1e-3), Error);
}

TEST_CASE("exact and step-integrated propagators agree on random systems") {
  Rng rng(3);
  std::uniform_real_distribution<double> times(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 5;
    const auto kind = trial % 2 == 0 ? CouplingKind::Random : CouplingKind::Geodesic;
    const auto sys = random_system(rng, dim, kind, 5.0);
    const double t = times(rng);
    CHECK(trace_distance(propagate_exact(sys, t), propagate_numeric(sys, t, 1e-3)) <= 1e-8);
  }
}

TEST_CASE("rotating frame examples") {
  Rng rng(4);
  const auto sys = random_system(rng, 3, CouplingKind::Random);
  const PureState s = random_state(rng, 3);
  CHECK((rotating_frame(sys, 0.0, s).amplitudes() - s.amplitudes()).norm() == 0.0);

  // Rotating-frame state is generated by H - A.
  for (double t : {0.3, 1.1, 2.9}) {
    const Vector expected =
        unitary_exp(sys.rotating_generator(), t) * sys.initial().amplitudes();
    CHECK((rotating_frame(sys, t, propagate_exact(sys, t)).amplitudes() - expected).norm() <
          1e-12);
  }

  // [H - A, rho] = 0: stationary in the rotating frame.
  const auto geo = random_system(rng, 4, CouplingKind::Geodesic);
  for (double t : {0.5, 1.0, 4.0}) {
    const PureState rf = rotating_frame(geo, t, propagate_exact(geo, t));
    CHECK(phase_aligned_distance(rf.amplitudes(), geo.initial().amplitudes()) <= 1e-10);
  }
}

TEST_CASE("off-equator start circles the x axis in the rotating frame") {
  const auto sys = off_equator_family(1.0, kPi / 6);
  const auto start = bloch_vector(*sys.bloch_frame(), sys.initial());
  CHECK(start[0] == doctest::Approx(0.5));
  CHECK(start[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(start[2] == doctest::Approx(std::sqrt(3.0) / 2));

  const auto traj = sample_trajectory(sys, 6.0, 600, Picture::Rotating);
  double lo = 1.0, hi = -1.0;
  for (const auto& s : traj.samples) {
    lo = std::min(lo, (*s.bloch)[0]);
    hi = std::max(hi, (*s.bloch)[0]);
  }
  CHECK(hi - lo <= 1e-9);

  // In the Schrodinger picture the same curve leaves that plane.
  const auto lab = sample_trajectory(sys, 6.0, 600, Picture::Schrodinger);
  lo = 1.0;
  hi = -1.0;
  for (const auto& s : lab.samples) {
    lo = std::min(lo, (*s.bloch)[0]);
    hi = std::max(hi, (*s.bloch)[0]);
  }
  CHECK(hi - lo > 0.1);
}

TEST_CASE("equator start stays on the equator and rotates about z") {
  const auto sys = build_ml_family(1.0, kPi / 3);
  // Stop before the angle passes pi and atan2 wraps.
  const auto traj = sample_trajectory(sys, 0.9, 100);
  for (const auto& s : traj.samples) {
    CHECK(std::abs((*s.bloch)[2]) < 1e-12);
    const double angle = std::atan2((*s.bloch)[1], (*s.bloch)[0]);
    // Bloch angle is twice the Fubini-Study distance along the geodesic.
    CHECK(std::abs(std::abs(angle) - 2.0 * std::sqrt(3.0) * s.t) < 1e-9);
  }
}

TEST_CASE("sample_trajectory examples") {
  const auto sys = build_ml_family(1.0, kPi / 3);
  const double t_max = kPi / (2.0 * std::sqrt(3.0));
  const auto traj = sample_trajectory(sys, t_max, 1000);
  REQUIRE(traj.samples.size() == 1001);
  CHECK(traj.samples.back().fidelity <= 1e-9);
  CHECK(traj.samples.back().t == t_max);

  const auto three = sample_trajectory(sys, 2.0, 2);
  REQUIRE(three.samples.size() == 3);
  CHECK(three.samples[0].t == 0.0);
  CHECK(three.samples[1].t == 1.0);
  CHECK(three.samples[2].t == 2.0);

  const auto h = HermitianOperator::diagonal({0.0, 1.0, 2.0});
  const PureState u = PureState::uniform(3);
  const RotatedHamiltonianSystem bd(h, build_coupling(h, u), u);
  for (const auto& s : sample_trajectory(bd, 3.0, 300).samples) {
    CHECK(s.occupied_count == 3);
    CHECK(!s.bloch.has_value());
  }

  CHECK_THROWS_AS(sample_trajectory(sys, 0.0, 10), Error);
  CHECK_THROWS_AS(sample_trajectory(sys, 1.0, 1), Error);
}

TEST_CASE("trajectory invariants on random systems of the conjugated class") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 5;
    const auto kind = static_cast<CouplingKind>(trial % 3);
    REQUIRE(kind != CouplingKind::Random);
    const auto sys = random_system(rng, dim, kind, 4.0);
    const auto traj = sample_trajectory(sys, 3.0, 200);
    const auto& first = traj.samples.front();
    double drift = 0.0;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
      const auto& s = traj.samples[k];
      const Matrix rho = traj.states[k].density();
      CHECK(std::abs(traj.states[k].amplitudes().norm() - 1.0) <= 1e-10);
      CHECK(std::abs((rho * rho).trace().real() - 1.0) <= 1e-9);
      REQUIRE(s.occupations.size() == first.occupations.size());
      for (std::size_t j = 0; j < s.occupations.size(); ++j) {
        drift = std::max(drift, std::abs(s.occupations[j] - first.occupations[j]));
      }
    }
    CHECK(drift <= 1e-9);
    CHECK(stddev(traj.column(&TrajectorySample::exp_energy)) <= 1e-9);
    CHECK(stddev(traj.column(&TrajectorySample::energy_uncertainty)) <= 1e-9);
    CHECK(stddev(traj.column(&TrajectorySample::norm_energy)) <= 1e-9);
    CHECK(stddev(traj.column(&TrajectorySample::dual_norm_energy)) <= 1e-9);
  }
}

TEST_CASE("geodesic systems move at constant Fubini-Study speed Delta H") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 5;
    const auto sys = random_system(rng, dim, CouplingKind::Geodesic, 3.0);
    const Matrix rho = sys.initial().density();
    const Matrix a = sys.coupling().matrix();
    REQUIRE((a * rho + rho * a - a).norm() <= 1e-10);
    REQUIRE(commutator_norm(sys.rotating_generator().matrix(), rho) <= 1e-10);

    const double speed = uncertainty(sys.hamiltonian(), sys.initial());
    const double t_end = 0.9 * kPi / (2.0 * speed);
    const auto traj = sample_trajectory(sys, t_end, 1000);
    const double dt = t_end / 1000.0;
    for (std::size_t k = 1; k + 1 < traj.samples.size(); ++k) {
      // arcsin of the trace distance keeps full precision near t = 0.
      const double ahead = std::asin(trace_distance(sys.initial(), propagate_exact(sys, traj.samples[k + 1].t)));
      const double behind = std::asin(trace_distance(sys.initial(), propagate_exact(sys, traj.samples[k - 1].t)));
      const double fs_speed = (ahead - behind) / (2.0 * dt);
      REQUIRE(std::abs(fs_speed - speed) <= 1e-6);
      REQUIRE(std::abs(traj.samples[k].energy_uncertainty - speed) <= 1e-6);
    }
  }
}

TEST_CASE("Bloch helpers are consistent") {
  const BlochFrame frame{PureState::basis(2, 0), PureState::basis(2, 1)};
  const auto x = bloch_vector(frame, frame.u);
  CHECK(x[0] == doctest::Approx(1.0));
  for (auto dir : {std::array<double, 3>{0.3, -0.4, 0.5}, std::array<double, 3>{0.0, 1.0, 0.0},
                   std::array<double, 3>{-1.0, 0.0, 0.0}}) {
    const double r = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const auto b = bloch_vector(frame, state_from_bloch(frame, dir[0], dir[1], dir[2]));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(b[i] - dir[i] / r) < 1e-12);
  }
}

TEST_CASE("conserves_occupations distinguishes the coupling kinds") {
  Rng rng(7);
  CHECK(random_system(rng, 3, CouplingKind::None).conserves_occupations());
  CHECK(random_system(rng, 3, CouplingKind::Geodesic).conserves_occupations());
  CHECK(random_system(rng, 3, CouplingKind::Commuting).conserves_occupations());
  CHECK(!random_system(rng, 3, CouplingKind::Random).conserves_occupations());
  CHECK(off_equator_family(1.0, kPi / 6, 0.0).conserves_occupations());
  CHECK(!off_equator_family(1.0, kPi / 6).conserves_occupations());
}
