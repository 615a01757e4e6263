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

#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qsl {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1 / golden ratio

void check_delta(double delta) {
  require(delta >= 0.0 && delta <= 1.0, ErrorCode::DomainError,
          "fidelity must lie in [0, 1], got " + std::to_string(delta));
}

// Golden-section minimization of a unimodal f on [lo, hi] down to `width`.
template <typename F>
double golden_section(F&& f, double lo, double hi, double width, int max_iter = 200) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && hi - lo > width; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

double overlap_modulus(const RotatedHamiltonianSystem& sys, double t) {
  return std::sqrt(fidelity(sys.initial(), propagate_exact(sys, t)));
}

}  // namespace

double fubini_study_distance(double delta) {
  check_delta(delta);
  return std::acos(std::sqrt(delta));
}

double alpha_objective(double z, double delta) {
  // arccos(1 - 2s^2) = 2 arcsin(s) with s^2 = (1 - delta)/(1 - z^2); the
  // atan2 form stays exact at z = +-sqrt(delta), where arccos loses half
  // its digits.
  const double r = std::sqrt(delta);
  const double rest = std::max(0.0, (r - z) * (r + z));
  return (1.0 + z) * std::atan2(std::sqrt(1.0 - delta), std::sqrt(rest));
}

double alpha(double delta) {
  check_delta(delta);
  if (delta == 1.0) return 0.0;
  const double r = std::sqrt(delta);
  const double lower = alpha_objective(-r, delta);
  if (r == 0.0) return lower;

  constexpr int kGrid = 2048;
  const double dz = 2.0 * r / kGrid;
  int best = 0;
  double best_value = lower;
  for (int k = 1; k <= kGrid; ++k) {
    const double value = alpha_objective(-r + dz * k, delta);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  const double lo = -r + dz * std::max(best - 1, 0);
  const double hi = std::min(-r + dz * std::min(best + 1, kGrid), r);
  auto f = [delta](double z) { return alpha_objective(z, delta); };
  const double z = golden_section(f, lo, hi, 1e-12);
  return std::min({f(z), lower, alpha_objective(r, delta), best_value});
}

double time_average(std::span<const double> times, std::span<const double> values) {
  require(times.size() == values.size(), ErrorCode::DimensionMismatch,
          "time_average: times and values differ in length");
  require(times.size() >= 2, ErrorCode::DomainError, "time_average: need at least 2 samples");
  const double span = times.back() - times.front();
  require(span > 0.0, ErrorCode::DegenerateInterval, "time_average: zero-length window");
  double integral = 0.0;
  bool constant = true;
  for (std::size_t k = 1; k < times.size(); ++k) {
    require(times[k] >= times[k - 1], ErrorCode::DomainError, "time_average: times not ascending");
    integral += 0.5 * (values[k] + values[k - 1]) * (times[k] - times[k - 1]);
    constant = constant && values[k] == values[0];
  }
  // Constant input should come back unchanged, not perturbed by rounding.
  if (constant) return values[0];
  return integral / span;
}

double bound_ratio(double numerator, double denominator) {
  if (numerator == 0.0) return 0.0;
  if (!(denominator > kZeroSpeed)) return kInfinite;
  return numerator / denominator;
}

double mt_isolated(const HermitianOperator& h, const PureState& s, double delta) {
  return bound_ratio(fubini_study_distance(delta), uncertainty(h, s));
}

double ml_isolated(const HermitianOperator& h, const PureState& s, double delta) {
  const double a = alpha(delta);
  const auto ext = occupied_extrema(h, s);
  return bound_ratio(a, expectation(h, s) - ext.eps_min);
}

double bd_isolated(const HermitianOperator& h, const PureState& s, double delta) {
  const auto ext = occupied_extrema(h, s);
  const double mean = expectation(h, s);
  const double factor = std::sqrt(std::max(0.0, (ext.eps_max - mean) * (mean - ext.eps_min)));
  return bound_ratio(fubini_study_distance(delta), factor);
}

namespace {

std::vector<double> bd_factors(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    out.push_back(std::sqrt(std::max(0.0, s.dual_norm_energy * s.norm_energy)));
  }
  return out;
}

// Average over the window; a single-instant window falls back to the value
// at that instant.
double window_average(const std::vector<double>& times, const std::vector<double>& values) {
  require(!times.empty(), ErrorCode::DomainError, "empty trajectory");
  if (times.size() == 1 || times.back() == times.front()) return values.front();
  return time_average(times, values);
}

}  // namespace

double mt_closed(const Trajectory& traj, double delta) {
  const double avg =
      window_average(traj.times(), traj.column(&TrajectorySample::energy_uncertainty));
  return bound_ratio(fubini_study_distance(delta), avg);
}

double bd_closed(const Trajectory& traj, double delta) {
  return bound_ratio(fubini_study_distance(delta), window_average(traj.times(), bd_factors(traj)));
}

double first_passage(const RotatedHamiltonianSystem& sys, double delta, double t_max,
                     const FirstPassageOptions& options) {
  check_delta(delta);
  require(t_max > 0.0, ErrorCode::DomainError, "t_max must be positive");
  if (delta == 1.0) return 0.0;

  const double target = std::sqrt(delta);
  auto g = [&](double t) { return overlap_modulus(sys, t) - target; };
  auto reached = [&](double t) {
    return std::abs(fidelity(sys.initial(), propagate_exact(sys, t)) - delta) <=
           options.fidelity_tol;
  };

  int n = options.coarse_samples;
  if (n <= 0) {
    // Overlap phases turn at most at rate width(H) + 2 |A|.
    const double rate =
        sys.hamiltonian().spectral_width() + 2.0 * sys.coupling().spectral_radius();
    n = static_cast<int>(std::clamp(std::ceil(t_max * rate / 0.02), 2000.0, 2.0e6));
  }
  const double dt = t_max / n;

  // First sign change of g inside [lo, hi] with g(lo) > 0 >= g(hi).
  auto bisect = [&](double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? lo : hi) = mid;
    }
    const double t = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
    if (!reached(t)) {
      throw Error(ErrorCode::NotReached, "bisection did not reach fidelity tolerance");
    }
    return t;
  };

  double g_prev = g(0.0);
  double g_curr = g(dt);
  for (int k = 1; k <= n; ++k) {
    const double t_prev = dt * (k - 1);
    const double t_curr = k == n ? t_max : dt * k;
    if (g_curr <= 0.0) return bisect(t_prev, t_curr);
    if (k == n) break;
    const double t_next = k + 1 == n ? t_max : dt * (k + 1);
    const double g_next = g(t_next);
    const double curvature = g_prev - 2.0 * g_curr + g_next;
    if (g_curr <= g_prev && g_curr <= g_next && g_curr <= 2.0 * curvature + 1e-9) {
      // Local dip that stays above the target on the grid: either a touch or
      // a crossing pair hidden between samples.
      const double t_min = golden_section(g, t_prev, t_next, 4e-16 * std::max(1.0, t_next));
      if (g(t_min) <= 0.0) return bisect(t_prev, t_min);
      if (reached(t_min)) return t_min;
    }
    g_prev = g_curr;
    g_curr = g_next;
  }
  throw Error(ErrorCode::NotReached,
              "fidelity " + std::to_string(delta) + " not reached by t=" + std::to_string(t_max));
}

BoundReport evaluate_bounds(const RotatedHamiltonianSystem& sys, double delta, double tau,
                            const Trajectory& window) {
  const auto& h = sys.hamiltonian();
  const auto& u = sys.initial();
  BoundReport r;
  r.delta = delta;
  r.tau_actual = tau;
  r.isolated = sys.is_isolated();
  if (sys.conserves_occupations()) {
    r.mt = mt_isolated(h, u, delta);
    r.bd = bd_isolated(h, u, delta);
  }
  if (r.isolated) r.ml = ml_isolated(h, u, delta);

  const auto times = window.times();
  r.avg_uncertainty = window_average(times, window.column(&TrajectorySample::energy_uncertainty));
  r.avg_bd_factor = window_average(times, bd_factors(window));
  r.avg_norm_energy = window_average(times, window.column(&TrajectorySample::norm_energy));
  r.mt_closed = bound_ratio(fubini_study_distance(delta), r.avg_uncertainty);
  r.bd_closed = bound_ratio(fubini_study_distance(delta), r.avg_bd_factor);
  return r;
}

BoundReport evaluate_bounds(const RotatedHamiltonianSystem& sys, double delta, double t_max,
                            int n, const FirstPassageOptions& options) {
  const double tau = first_passage(sys, delta, t_max, options);
  Trajectory window;
  if (tau > 0.0) {
    window = sample_window(sys, 0.0, tau, n);
  } else {
    window.samples.push_back(observe(sys, 0.0, sys.initial()));
    window.states.push_back(sys.initial());
  }
  return evaluate_bounds(sys, delta, tau, window);
}

std::vector<std::string> bound_violations(const BoundReport& report, double tol) {
  std::vector<std::string> out;
  const double limit = report.tau_actual + tol;
  if (report.mt && *report.mt > limit) out.emplace_back("mt");
  if (report.bd && *report.bd > limit) out.emplace_back("bd");
  if (report.ml && *report.ml > limit) out.emplace_back("ml");
  if (report.mt_closed > limit) out.emplace_back("mt_closed");
  if (report.bd_closed > limit) out.emplace_back("bd_closed");
  // Equal up to rounding for two occupied levels.
  if (report.mt_closed < report.bd_closed - 1e-12 * (1.0 + report.bd_closed)) {
    out.emplace_back("mt_closed<bd_closed");
  }
  return out;
}

}  // namespace qsl
