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

#include "oracles.hpp"
#include "qsl/counterexamples.hpp"
#include "qsl/sweep.hpp"

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("build_coupling produces a geodesic generator") {
  Rng rng(11);
  std::uniform_int_distribution<int> dims(2, 8);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = dims(rng);
    const auto h = random_hermitian(rng, dim, 5.0);
    const auto u = random_state(rng, dim);
    const auto a = build_coupling(h, u);
    const Matrix rho = u.density();
    const Matrix am = a.matrix();
    CHECK((am * rho + rho * am - am).norm() <= 1e-10);
    CHECK(commutator_norm((h - a).matrix(), rho) <= 1e-10);
  }
}

TEST_CASE("build_coupling vanishes on eigenstates") {
  const auto h = HermitianOperator::diagonal({0.0, 1.0, 3.0});
  CHECK(build_coupling(h, PureState::basis(3, 1)).norm() <= 1e-15);
}

TEST_CASE("build_ml_family examples") {
  const auto half = build_ml_family(1.0, kPi / 2);
  CHECK(std::abs(ml_family_mu(1.0, kPi / 2) - 1.0) <= 1e-12);
  CHECK(std::abs(uncertainty(half.hamiltonian(), half.initial()) - 1.0) <= 1e-12);

  const auto third = build_ml_family(1.0, kPi / 3);
  CHECK(std::abs(ml_family_mu(1.0, kPi / 3) - 2.0) <= 1e-12);
  CHECK(std::abs(uncertainty(third.hamiltonian(), third.initial()) - std::sqrt(3.0)) <= 1e-12);
  // Normalized expected energy <H - eps_min> = mu (1 - cos theta) = E.
  const auto extrema = occupied_extrema(third.hamiltonian(), third.initial());
  CHECK(std::abs(expectation(third.hamiltonian(), third.initial()) - extrema.eps_min - 1.0) <=
        1e-12);

  CHECK(code_of([] { build_ml_family(1.0, kPi); }) == ErrorCode::DomainError);
  CHECK(code_of([] { build_ml_family(1.0, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { build_ml_family(0.0, 1.0); }) == ErrorCode::DomainError);
}

TEST_CASE("build_ml_family embeds into larger spaces") {
  Rng rng(12);
  const PureState u = random_state(rng, 5);
  const auto sys = build_ml_family(2.0, kPi / 3, u);
  CHECK(sys.dim() == 5);
  CHECK(std::abs(uncertainty(sys.hamiltonian(), u) - 2.0 * std::sqrt(3.0)) <= 1e-12);
  const double tau = first_passage(sys, 0.0, 2.0);
  CHECK(std::abs(tau - oracle::geodesic_passage(0.0, 2.0 * std::sqrt(3.0))) <= 1e-8);
}

TEST_CASE("choose_theta examples") {
  // c = 1, margin 0.1: cot(theta/2) = 1.1.
  const double theta = choose_theta(0.0, kPi / 2);
  CHECK(std::abs(1.0 / std::tan(theta / 2) - 1.1) <= 1e-12);
  CHECK(code_of([] { choose_theta(0.0, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { choose_theta(1.0, 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { make_refutation_spec(0.0, 1.0, 1.0, kPi / 2 + 0.5); }) ==
        ErrorCode::DomainError);
}

TEST_CASE("run_ml_refutation spot value") {
  const auto spec = make_refutation_spec(0.0, 1.0, 1.0, kPi / 3);
  const auto report = run_ml_refutation(spec);
  CHECK(std::abs(report.tau - kPi / (2.0 * std::sqrt(3.0))) <= 1e-6);
  CHECK(report.violated);
  CHECK(report.saturation_gap <= 1e-8);
  CHECK(report.max_norm_energy_deviation <= 1e-9);
  CHECK(report.trajectory.samples.size() == 1001);
}

TEST_CASE("run_ml_refutation defeats every hypothetical numerator on the grid") {
  for (int k = 0; k <= 9; ++k) {
    const double delta = k / 10.0;
    std::vector<double> numerators{std::acos(std::sqrt(delta)), 0.1, 1.0};
    if ((1.0 - delta) / 2 > 0) numerators.push_back((1.0 - delta) / 2);
    for (double L : numerators) {
      for (double E : {0.5, 1.0, 2.0}) {
        const auto r = run_ml_refutation(delta, L, E, kDefaultThetaMargin, 200);
        CHECK(r.tau < L / E - 1e-9);
        CHECK(r.violated);
        CHECK(r.max_norm_energy_deviation <= 1e-9);
        CHECK(r.saturation_gap <= 1e-8);
      }
    }
  }
}

TEST_CASE("run_bd_nonsaturation on three equally spaced levels") {
  const auto h = HermitianOperator::diagonal({0.0, 1.0, 2.0});
  const auto r = run_bd_nonsaturation(h, PureState::uniform(3), 0.0);
  CHECK(std::abs(r.bounds.tau_actual - (kPi / 2) / std::sqrt(2.0 / 3.0)) <= 1e-8);
  CHECK(std::abs(r.bounds.bd_closed - kPi / 2) <= 1e-9);
  CHECK(std::abs(r.bounds.mt_closed - r.bounds.bd_closed - (kPi / 2) * (std::sqrt(1.5) - 1.0)) <=
        1e-6);
  CHECK(r.strict_everywhere);
  CHECK(r.min_strict_margin > 0.3);
  CHECK(r.min_occupied == 3);
  CHECK(r.saturation_gap <= 1e-8);
}

TEST_CASE("run_bd_nonsaturation with unequal weights") {
  const auto h = HermitianOperator::diagonal({0.0, 1.0, 3.0});
  Vector amps(3);
  amps << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const auto r = run_bd_nonsaturation(h, PureState(amps), 0.3);
  CHECK(r.strict_everywhere);
  CHECK(r.bounds.mt_closed > r.bounds.bd_closed);
}

TEST_CASE("run_bd_nonsaturation needs three occupied levels") {
  const auto h = HermitianOperator::diagonal({0.0, 1.0, 2.0});
  Vector amps(3);
  amps << 1.0, 1.0, 0.0;
  CHECK(code_of([&] { run_bd_nonsaturation(h, PureState(amps), 0.0); }) ==
        ErrorCode::InsufficientLevels);
}

TEST_CASE("Bhatia-Davies stays strict on random states with three or more levels") {
  Rng rng(13);
  std::uniform_int_distribution<int> dims(3, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = dims(rng);
    const auto h = random_hermitian(rng, dim, 3.0);
    const auto u = random_state(rng, dim);
    const auto r = run_bd_nonsaturation(h, u, 0.2, 200);
    CHECK(r.strict_everywhere);
    CHECK(r.bounds.mt_closed > r.bounds.bd_closed);
  }
}

TEST_CASE("energy profile matches E cot(theta/2) and is decreasing") {
  std::vector<double> thetas;
  for (int k = 1; k < 180; ++k) thetas.push_back(k * kPi / 180.0);
  const auto rows = energy_profile(1.5, thetas);
  REQUIRE(rows.size() == thetas.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(std::abs(rows[k].energy_uncertainty - 1.5 / std::tan(thetas[k] / 2)) <= 1e-10);
    CHECK(std::abs(rows[k].norm_energy - 1.5) <= 1e-10);
    if (k > 0) CHECK(rows[k].energy_uncertainty < rows[k - 1].energy_uncertainty);
  }
}
