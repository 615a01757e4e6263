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

#include "qsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsl {

namespace {

double degeneracy_gap(const RealVector& values) {
  const double width = values.size() > 0 ? values(values.size() - 1) - values(0) : 0.0;
  return kDegeneracyTol * (width + 1.0);
}

// Index ranges [begin, end) of eigenvalue groups treated as one level.
std::vector<std::pair<Eigen::Index, Eigen::Index>> level_groups(const RealVector& values) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;
  const double gap = degeneracy_gap(values);
  Eigen::Index begin = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k == values.size() || values(k) - values(k - 1) > gap) {
      groups.emplace_back(begin, k);
      begin = k;
    }
  }
  return groups;
}

void fix_phase(Eigen::Ref<Vector> column) {
  const double scale = column.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    if (std::abs(column(i)) > 1e-8 * scale) {
      column *= std::conj(column(i)) / std::abs(column(i));
      return;
    }
  }
}

// Replace the columns of a degenerate block with the Gram-Schmidt basis of
// the projected standard basis vectors.
void canonicalize_block(Matrix& vectors, Eigen::Index begin, Eigen::Index end) {
  const Eigen::Index dim = vectors.rows();
  const Eigen::Index size = end - begin;
  const Matrix block = vectors.middleCols(begin, size);
  const Matrix projector = block * block.adjoint();
  Matrix basis(dim, size);
  Eigen::Index found = 0;
  for (Eigen::Index k = 0; k < dim && found < size; ++k) {
    Vector w = projector.col(k);
    for (Eigen::Index j = 0; j < found; ++j) w -= basis.col(j) * basis.col(j).dot(w);
    const double n = w.norm();
    if (n > 1e-6) basis.col(found++) = w / n;
  }
  // The projected basis vectors always span the block; this guard only
  // matters for pathological rounding.
  if (found == size) vectors.middleCols(begin, size) = basis;
}

Matrix hermitian_part(const Matrix& m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::DimensionMismatch,
          "operator must be square and non-empty");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= kHermiticityTol, ErrorCode::NonHermitian,
          "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  return (m + m.adjoint()) * 0.5;
}

}  // namespace

void check_dims(Eigen::Index a, Eigen::Index b, const char* where) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

EigenSystem eigh(const Matrix& hermitian) {
  require(hermitian.rows() == hermitian.cols() && hermitian.rows() > 0,
          ErrorCode::DimensionMismatch, "eigh: matrix must be square and non-empty");
  const double asym = (hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= kHermiticityTol, ErrorCode::NonHermitian,
          "asymmetry " + std::to_string(asym) + " exceeds tolerance");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  EigenSystem result{solver.eigenvalues(), solver.eigenvectors()};
  for (auto [begin, end] : level_groups(result.values)) {
    if (end - begin > 1) canonicalize_block(result.vectors, begin, end);
  }
  for (Eigen::Index k = 0; k < result.vectors.cols(); ++k) fix_phase(result.vectors.col(k));
  return result;
}

HermitianOperator::HermitianOperator(const Matrix& entries)
    : entries_(hermitian_part(entries)), eig_(eigh(entries_)) {}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) {
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = values[k];
  }
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

double HermitianOperator::spectral_radius() const {
  return std::max(std::abs(eig_.values(0)), std::abs(eig_.values(eig_.values.size() - 1)));
}

double HermitianOperator::spectral_width() const {
  return eig_.values(eig_.values.size() - 1) - eig_.values(0);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  check_dims(dim(), other.dim(), "operator-");
  return HermitianOperator(Matrix(entries_ - other.entries_));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  check_dims(dim(), other.dim(), "operator+");
  return HermitianOperator(Matrix(entries_ + other.entries_));
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(Matrix(entries_ * scale));
}

PureState::PureState(const Vector& amplitudes) {
  require(amplitudes.size() > 0, ErrorCode::DimensionMismatch, "empty state vector");
  const double n = amplitudes.norm();
  require(n > 0.0 && std::isfinite(n), ErrorCode::DomainError, "state vector has zero norm");
  amplitudes_ = amplitudes / n;
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return PureState(v);
}

PureState PureState::uniform(Eigen::Index dim) { return PureState(Vector::Ones(dim)); }

Matrix unitary_exp(const HermitianOperator& op, double t) {
  const auto& eig = op.eig();
  Vector phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -eig.values(k) * t);
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Vector apply_unitary_exp(const HermitianOperator& op, double t, const Vector& v) {
  check_dims(op.dim(), v.size(), "apply_unitary_exp");
  const auto& eig = op.eig();
  Vector coeffs = eig.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -eig.values(k) * t);
  }
  return eig.vectors * coeffs;
}

double expectation(const HermitianOperator& op, const PureState& s) {
  check_dims(op.dim(), s.dim(), "expectation");
  return s.amplitudes().dot(op.matrix() * s.amplitudes()).real();
}

double variance(const HermitianOperator& op, const PureState& s) {
  check_dims(op.dim(), s.dim(), "variance");
  const Vector& u = s.amplitudes();
  const double mean = expectation(op, s);
  return (op.matrix() * u - mean * u).squaredNorm();
}

double uncertainty(const HermitianOperator& op, const PureState& s) {
  return std::sqrt(variance(op, s));
}

double fidelity(const PureState& s1, const PureState& s2) {
  check_dims(s1.dim(), s2.dim(), "fidelity");
  return std::clamp(std::norm(s1.amplitudes().dot(s2.amplitudes())), 0.0, 1.0);
}

double trace_distance(const PureState& s1, const PureState& s2) {
  // Norm of the part of s2 orthogonal to s1 equals sqrt(1 - F) and keeps its
  // precision when the states nearly coincide.
  check_dims(s1.dim(), s2.dim(), "trace_distance");
  const Vector& a = s1.amplitudes();
  const Vector& b = s2.amplitudes();
  return std::min(1.0, (b - a.dot(b) * a).norm());
}

std::vector<Level> level_occupations(const HermitianOperator& op, const PureState& s) {
  check_dims(op.dim(), s.dim(), "level_occupations");
  const auto& eig = op.eig();
  const RealVector weights = (eig.vectors.adjoint() * s.amplitudes()).cwiseAbs2();
  std::vector<Level> levels;
  for (auto [begin, end] : level_groups(eig.values)) {
    Level level;
    level.energy = eig.values.segment(begin, end - begin).mean();
    level.weight = weights.segment(begin, end - begin).sum();
    levels.push_back(level);
  }
  return levels;
}

OccupiedExtrema occupied_extrema(const HermitianOperator& op, const PureState& s, double tol) {
  require(tol > 0.0, ErrorCode::DomainError, "occupation tolerance must be positive");
  OccupiedExtrema out;
  for (const Level& level : level_occupations(op, s)) {
    if (level.weight <= tol) continue;
    if (out.occupied_count == 0) out.eps_min = level.energy;
    out.eps_max = level.energy;
    ++out.occupied_count;
  }
  require(out.occupied_count > 0, ErrorCode::NoOccupation,
          "no level has occupation above " + std::to_string(tol));
  return out;
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  check_dims(a.rows(), b.rows(), "commutator_norm");
  return (a * b - b * a).norm();
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator_norm(a.matrix(), b.matrix());
}

PureState perpendicular(const PureState& u) {
  const Vector& a = u.amplitudes();
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    Vector w = Vector::Unit(a.size(), k);
    w -= a * a.dot(w);
    if (w.norm() > 1e-8) return PureState(w);
  }
  throw Error(ErrorCode::DimensionMismatch, "no perpendicular vector in dimension 1");
}

}  // namespace qsl
