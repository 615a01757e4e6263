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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qsl/errors.hpp"

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kOccupationTol = 1e-12;
/// Relative gap below which two eigenvalues are treated as one energy level.
inline constexpr double kDegeneracyTol = 1e-9;

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns, unitary
};

/// Dense Hermitian matrix. The eigendecomposition is computed once at
/// construction so that instances stay immutable and can be shared across
/// threads.
class HermitianOperator {
 public:
  /// Throws NonHermitian if `entries` deviates from its adjoint by more than
  /// kHermiticityTol in any entry. The stored matrix is the exact Hermitian
  /// part, (M + M^dagger) / 2.
  explicit HermitianOperator(const Matrix& entries);

  static HermitianOperator diagonal(const std::vector<double>& values);
  static HermitianOperator zero(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const EigenSystem& eig() const { return eig_; }
  const RealVector& eigenvalues() const { return eig_.values; }
  const Matrix& eigenvectors() const { return eig_.vectors; }

  double spectral_radius() const;
  double spectral_width() const;

  /// Frobenius norm of the underlying matrix.
  double norm() const { return entries_.norm(); }

  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;

 private:
  Matrix entries_;
  EigenSystem eig_;
};

/// Unit vector in C^dim. Amplitudes are normalized on construction; a zero
/// vector is rejected.
class PureState {
 public:
  explicit PureState(const Vector& amplitudes);

  static PureState basis(Eigen::Index dim, Eigen::Index k);
  static PureState uniform(Eigen::Index dim);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  /// |u><u|
  Matrix density() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
};

/// Energy level after degeneracy grouping: eigenvalue and the summed
/// occupation over its eigenspace.
struct Level {
  double energy = 0.0;
  double weight = 0.0;
};

struct OccupiedExtrema {
  double eps_min = 0.0;
  double eps_max = 0.0;
  int occupied_count = 0;
};

/// Eigenvalues ascending. Degenerate eigenspaces get a canonical basis
/// (projected standard basis vectors, Gram-Schmidt) and every column has its
/// first non-negligible component real and positive, so output does not
/// depend on how the solver splits a degenerate space.
EigenSystem eigh(const Matrix& hermitian);

/// e^{-i op t}
Matrix unitary_exp(const HermitianOperator& op, double t);

/// e^{-i op t} v without forming the matrix.
Vector apply_unitary_exp(const HermitianOperator& op, double t, const Vector& v);

double expectation(const HermitianOperator& op, const PureState& s);
double variance(const HermitianOperator& op, const PureState& s);
double uncertainty(const HermitianOperator& op, const PureState& s);

/// |<s1|s2>|^2, clamped to [0, 1].
double fidelity(const PureState& s1, const PureState& s2);

/// Trace distance between the rank-1 projectors, sqrt(1 - fidelity).
double trace_distance(const PureState& s1, const PureState& s2);

/// Eigenvalues grouped into levels (ascending) with their occupations.
std::vector<Level> level_occupations(const HermitianOperator& op, const PureState& s);

OccupiedExtrema occupied_extrema(const HermitianOperator& op, const PureState& s,
                                 double tol = kOccupationTol);

/// Frobenius norm of ab - ba.
double commutator_norm(const Matrix& a, const Matrix& b);
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

/// Unit vector orthogonal to `u`: Gram-Schmidt of the first standard basis
/// vector that is not parallel to `u`.
PureState perpendicular(const PureState& u);

void check_dims(Eigen::Index a, Eigen::Index b, const char* where);

}  // namespace qsl
