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
#include <random>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"

namespace qsl {

using Rng = std::mt19937_64;

/// GUE-style sample rescaled so its spectral radius is `radius`.
HermitianOperator random_hermitian(Rng& rng, Eigen::Index dim, double radius);
PureState random_state(Rng& rng, Eigen::Index dim);

enum class CouplingKind { None, Geodesic, Commuting, Random };

std::string to_string(CouplingKind kind);

/// Random member of the conjugated class. `None` gives an isolated system,
/// `Geodesic` uses build_coupling, `Commuting` adds to it a term commuting
/// with the initial state, `Random` draws an independent A.
RotatedHamiltonianSystem random_system(Rng& rng, Eigen::Index dim, CouplingKind kind,
                                       double radius = 5.0);

struct SweepParams {
  int systems = 200;
  std::uint64_t seed = 20231;
  int dim_min = 2;
  int dim_max = 6;
  double spectral_radius = 5.0;
  double t_max = 10.0;
  int samples = 200;  // window samples per bound evaluation
  std::vector<double> deltas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double tol = 1e-9;
};

struct SweepRow {
  int system = 0;
  int dim = 0;
  CouplingKind coupling = CouplingKind::None;
  double delta = 0.0;
  bool reached = false;
  BoundReport report;
  std::vector<std::string> violations;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int reached = 0;
  int unreached = 0;
  int violations = 0;
};

/// Seeded sweep over random systems; system k cycles through the four
/// coupling kinds. Cells whose fidelity is never reached within t_max
/// are recorded as unreached rather than failing the sweep.
SweepResult run_validity_sweep(const SweepParams& params);

}  // namespace qsl
