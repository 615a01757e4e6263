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

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsl::oracle {

inline constexpr double kPi = std::numbers::pi;

/// The alpha objective written directly from its definition,
/// ((1 + z)/2) arccos((2 delta - 1 - z^2) / (1 - z^2)).
inline double alpha_objective_direct(double z, double delta) {
  const double denom = 1.0 - z * z;
  if (denom <= 0.0) return 0.0;  // only reachable for delta = 1, z = +-1
  const double arg = (2.0 * delta - 1.0 - z * z) / denom;
  return 0.5 * (1.0 + z) * std::acos(std::clamp(arg, -1.0, 1.0));
}

/// Dense scan of `points` equally spaced z in [-sqrt(delta), sqrt(delta)],
/// then golden-section polishing inside the neighbouring cells.
inline double alpha_dense_grid(double delta, int points = 1'000'000) {
  if (delta >= 1.0) return 0.0;
  const double r = std::sqrt(delta);
  if (r == 0.0) return alpha_objective_direct(0.0, delta);
  const double dz = 2.0 * r / (points - 1);
  int best = 0;
  double best_value = alpha_objective_direct(-r, delta);
  for (int k = 1; k < points; ++k) {
    const double v = alpha_objective_direct(-r + dz * k, delta);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double lo = -r + dz * std::max(best - 1, 0);
  double hi = std::min(-r + dz * (best + 1), r);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  while (hi - lo > 1e-13) {
    const double a = hi - g * (hi - lo);
    const double b = lo + g * (hi - lo);
    if (alpha_objective_direct(a, delta) <= alpha_objective_direct(b, delta)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::min(best_value, alpha_objective_direct(0.5 * (lo + hi), delta));
}

/// First time a geodesic with constant speed `speed` reaches fidelity delta.
inline double geodesic_passage(double delta, double speed) {
  return std::acos(std::sqrt(delta)) / speed;
}

}  // namespace qsl::oracle
