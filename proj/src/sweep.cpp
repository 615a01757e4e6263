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

#include "qsl/sweep.hpp"

#include "qsl/counterexamples.hpp"

namespace qsl {

HermitianOperator random_hermitian(Rng& rng, Eigen::Index dim, double radius) {
  std::normal_distribution<double> normal;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  const HermitianOperator h(Matrix((m + m.adjoint()) * 0.5));
  return h * (radius / h.spectral_radius());
}

PureState random_state(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return PureState(v);
}

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::None: return "none";
    case CouplingKind::Geodesic: return "geodesic";
    case CouplingKind::Commuting: return "commuting";
    case CouplingKind::Random: return "random";
  }
  return "unknown";
}

RotatedHamiltonianSystem random_system(Rng& rng, Eigen::Index dim, CouplingKind kind,
                                       double radius) {
  HermitianOperator h = random_hermitian(rng, dim, radius);
  PureState u = random_state(rng, dim);
  switch (kind) {
    case CouplingKind::None:
      return RotatedHamiltonianSystem(h, HermitianOperator::zero(dim), u);
    case CouplingKind::Geodesic: {
      HermitianOperator a = build_coupling(h, u);
      return RotatedHamiltonianSystem(std::move(h), std::move(a), std::move(u));
    }
    case CouplingKind::Commuting: {
      // Geodesic coupling plus a term B with [B, rho] = 0: [H - A, rho] still
      // vanishes but A rho + rho A != A.
      const Matrix rho = u.density();
      const Matrix q = Matrix::Identity(dim, dim) - rho;
      std::normal_distribution<double> normal;
      const Matrix b = q * random_hermitian(rng, dim, radius).matrix() * q + normal(rng) * rho;
      HermitianOperator a = build_coupling(h, u) + HermitianOperator(b);
      return RotatedHamiltonianSystem(std::move(h), std::move(a), std::move(u));
    }
    case CouplingKind::Random: {
      HermitianOperator a = random_hermitian(rng, dim, radius);
      return RotatedHamiltonianSystem(std::move(h), std::move(a), std::move(u));
    }
  }
  throw Error(ErrorCode::DomainError, "unknown coupling kind");
}

SweepResult run_validity_sweep(const SweepParams& params) {
  require(params.systems > 0, ErrorCode::DomainError, "systems must be positive");
  require(params.dim_min >= 2 && params.dim_max >= params.dim_min, ErrorCode::DomainError,
          "need 2 <= dim_min <= dim_max");
  Rng rng(params.seed);
  std::uniform_int_distribution<int> dims(params.dim_min, params.dim_max);
  constexpr CouplingKind kinds[] = {CouplingKind::None, CouplingKind::Geodesic,
                                    CouplingKind::Commuting, CouplingKind::Random};

  SweepResult result;
  for (int k = 0; k < params.systems; ++k) {
    const int dim = dims(rng);
    const CouplingKind kind = kinds[k % 4];
    const RotatedHamiltonianSystem sys = random_system(rng, dim, kind, params.spectral_radius);
    for (double delta : params.deltas) {
      SweepRow row;
      row.system = k;
      row.dim = dim;
      row.coupling = kind;
      row.delta = delta;
      try {
        row.report = evaluate_bounds(sys, delta, params.t_max, params.samples);
        row.reached = true;
        row.violations = bound_violations(row.report, params.tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotReached) throw;
      }
      if (row.reached) {
        ++result.reached;
        result.violations += static_cast<int>(row.violations.size());
      } else {
        ++result.unreached;
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace qsl
