// Copyright 2026 The zeno Authors
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

#include <cmath>
#include <string>
#include <utility>

#include "zeno/linalg.hpp"

namespace zeno {

/// Amplitude-level state. Closed dynamics keeps |psi| = 1; the decay model lets it shrink
/// and 1 - |psi|^2 is the leaked probability.
template <typename Real>
class BasicStateVector {
 public:
  using Vector = ComplexVector<Real>;

  /// Accepts any finite vector with norm <= 1 (+tol).
  explicit BasicStateVector(Vector amplitudes, double tol = kTolerances.state_norm)
      : amp_(std::move(amplitudes)) {
    if (amp_.size() < 1) throw Error(ErrorCode::InvalidState, "state vector must have dim >= 1");
    if (!amp_.allFinite()) throw Error(ErrorCode::NonFinite, "state vector has non-finite entries");
    if (amp_.norm() > Real(1) + Real(tol)) {
      throw Error(ErrorCode::InvalidState, "state vector norm exceeds 1: " + std::to_string(double(amp_.norm())));
    }
  }

  /// Requires |psi| = 1 within tolerance.
  static BasicStateVector unit(Vector amplitudes, double tol = kTolerances.state_norm) {
    const Real n = amplitudes.norm();
    if (std::abs(n - Real(1)) > Real(tol)) {
      throw Error(ErrorCode::InvalidState, "state vector is not normalized: " + std::to_string(double(n)));
    }
    return BasicStateVector(std::move(amplitudes), tol);
  }

  static BasicStateVector basis(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
    Vector v = Vector::Zero(dim);
    v(k) = Real(1);
    return BasicStateVector(std::move(v));
  }

  const Vector& amplitudes() const { return amp_; }
  Eigen::Index dim() const { return amp_.size(); }
  Real norm() const { return amp_.norm(); }
  Real leakage() const { return Real(1) - amp_.squaredNorm(); }

  ComplexMatrix<Real> projector() const { return amp_ * amp_.adjoint(); }

 private:
  Vector amp_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix.
template <typename Real>
class BasicDensityMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  static BasicDensityMatrix validated(Matrix m, const Tolerances& tol = kTolerances) {
    linalg::require_square(m, "density matrix");
    if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "density matrix has non-finite entries");
    if (linalg::hermiticity_defect(m) > tol.hermiticity) {
      throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    const Real tr = m.trace().real();
    if (std::abs(tr - Real(1)) > Real(tol.state_trace)) {
      throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(double(tr)));
    }
    const Matrix sym = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::ConvergenceFailure, "density matrix eigenvalues did not converge");
    }
    if (solver.eigenvalues()(0) < -Real(tol.state_psd)) {
      throw Error(ErrorCode::InvalidState,
                  "density matrix has negative eigenvalue " + std::to_string(double(solver.eigenvalues()(0))));
    }
    return BasicDensityMatrix(std::move(m));
  }

  /// Skips validation. Engines use this for states produced by trace-preserving maps.
  static BasicDensityMatrix trusted(Matrix m) { return BasicDensityMatrix(std::move(m)); }

  static BasicDensityMatrix pure(const BasicStateVector<Real>& psi) {
    return validated(psi.projector());
  }

  static BasicDensityMatrix maximally_mixed(Eigen::Index dim) {
    return BasicDensityMatrix(Matrix::Identity(dim, dim) / Real(dim));
  }

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Real trace() const { return mat_.trace().real(); }

 private:
  explicit BasicDensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;

}  // namespace zeno
