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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "zeno/error.hpp"
#include "zeno/tolerances.hpp"

namespace zeno {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using RVector = RealVector<double>;
using Complex = std::complex<double>;

namespace linalg {

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be square with dim >= 1, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

template <typename DerivedA, typename DerivedB>
void require_same_dim(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

/// Largest singular value.
template <typename Derived>
RealOf<Derived> opnorm(const Eigen::MatrixBase<Derived>& a) {
  require_finite(a, "opnorm input");
  if (a.size() == 0) return RealOf<Derived>(0);
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(a.eval());
  return svd.singularValues()(0);
}

template <typename Derived>
RealOf<Derived> hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
  using Real = RealOf<Derived>;
  const Real scale = std::max(Real(1), a.norm());
  return (a - a.adjoint()).norm() / scale;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kTolerances.hermiticity) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

template <typename Derived>
RealOf<Derived> unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return opnorm((u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).eval());
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kTolerances.unitarity) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b - b * a).eval();
}

template <typename Real>
struct EigenDecomposition {
  RealVector<Real> eigenvalues;      // ascending
  ComplexMatrix<Real> eigenvectors;  // columns, unitary
};

/// Hermitian eigendecomposition. Eigenvalues ascending; H = V diag(w) V^H.
template <typename Derived>
EigenDecomposition<RealOf<Derived>> eigh(const Eigen::MatrixBase<Derived>& h,
                                         double hermiticity_tol = kTolerances.hermiticity) {
  using Real = RealOf<Derived>;
  static_assert(Eigen::NumTraits<typename Derived::Scalar>::IsComplex, "eigh expects a complex matrix");
  require_square(h, "eigh input");
  require_finite(h, "eigh input");
  const Real defect = hermiticity_defect(h);
  if (defect > hermiticity_tol) {
    throw Error(ErrorCode::NotHermitian, "hermiticity defect " + std::to_string(double(defect)));
  }
  // Symmetrize so the solver sees an exactly Hermitian operand.
  const ComplexMatrix<Real> sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// V f(diag(w)) V^H for a scalar function f of the real eigenvalues.
template <typename Real, typename Fn>
ComplexMatrix<Real> spectral_apply(const EigenDecomposition<Real>& eig, Fn&& f) {
  const auto n = eig.eigenvalues.size();
  ComplexVector<Real> fw(n);
  for (Eigen::Index k = 0; k < n; ++k) fw(k) = f(eig.eigenvalues(k));
  return eig.eigenvectors * fw.asDiagonal() * eig.eigenvectors.adjoint();
}

/// exp(-i H t) for Hermitian H.
template <typename Derived>
ComplexMatrix<RealOf<Derived>> propagator(const Eigen::MatrixBase<Derived>& h, RealOf<Derived> t) {
  using Real = RealOf<Derived>;
  const auto eig = eigh(h);
  const Real phase_bound = eig.eigenvalues.cwiseAbs().maxCoeff() * std::abs(t);
  if (!std::isfinite(double(phase_bound))) throw Error(ErrorCode::NonFinite, "exp(-iHt): |H| t overflows");
  return spectral_apply(eig, [t](Real w) { return std::polar(Real(1), -w * t); });
}

/// Scaling-and-squaring with a Taylor kernel. Works for any square matrix.
template <typename Real>
ComplexMatrix<Real> expm_taylor(const ComplexMatrix<Real>& a, double accuracy) {
  using Matrix = ComplexMatrix<Real>;
  const auto n = a.rows();
  const Real norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  // Scale until |X|_1 <= 1/2 so the series converges fast.
  int squarings = 0;
  if (norm1 > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(double(norm1) / 0.5)));
  const Matrix x = a / std::ldexp(Real(1), squarings);

  // Relative error grows by up to 2^s through the squarings.
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real target = std::max(Real(accuracy) * std::ldexp(Real(1), -squarings), eps / 4);

  Matrix sum = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  constexpr int kMaxTerms = 60;
  int k = 1;
  for (; k <= kMaxTerms; ++k) {
    term = (term * x) / Real(k);
    sum += term;
    const Real term_norm = term.cwiseAbs().colwise().sum().maxCoeff();
    const Real sum_norm = sum.cwiseAbs().colwise().sum().maxCoeff();
    if (term_norm <= target * sum_norm) break;
  }
  if (k > kMaxTerms) throw Error(ErrorCode::ConvergenceFailure, "Taylor kernel did not converge");

  for (int i = 0; i < squarings; ++i) {
    sum = (sum * sum).eval();
    if (!sum.allFinite()) throw Error(ErrorCode::ConvergenceFailure, "overflow during squaring");
  }
  return sum;
}

/// V exp(D) V^-1 when the eigenvector matrix is well enough conditioned for the error
/// bound cond(V) * eps to meet `accuracy`. Stiff generators (a huge decay rate next to O(1)
/// couplings) need this: squaring amplifies rounding by 2^s there.
template <typename Real>
std::optional<ComplexMatrix<Real>> expm_diagonalizable(const ComplexMatrix<Real>& a, double accuracy) {
  using Matrix = ComplexMatrix<Real>;
  Eigen::ComplexEigenSolver<Matrix> ces(a);
  if (ces.info() != Eigen::Success) return std::nullopt;
  const Matrix& v = ces.eigenvectors();
  const auto sv = Eigen::JacobiSVD<Matrix>(v).singularValues();
  const Real smallest = sv(sv.size() - 1);
  if (!(smallest > Real(0))) return std::nullopt;
  const Real cond = sv(0) / smallest;
  const Real eps = std::numeric_limits<Real>::epsilon();
  if (Real(16) * Real(a.rows()) * cond * eps > Real(accuracy)) return std::nullopt;
  const auto expd = ces.eigenvalues().array().exp().matrix().eval();
  Matrix out = v * expd.asDiagonal() * v.partialPivLu().inverse();
  if (!out.allFinite()) return std::nullopt;
  return out;
}

/// Matrix exponential. (Anti-)Hermitian inputs go through the eigendecomposition,
/// which keeps exp(-iHt) unitary to rounding; well-conditioned diagonalizable matrices use
/// their eigenvectors; everything else uses scaling-and-squaring.
template <typename Derived>
ComplexMatrix<RealOf<Derived>> expm(const Eigen::MatrixBase<Derived>& a,
                                    double accuracy = kTolerances.expm_accuracy) {
  using Real = RealOf<Derived>;
  using Matrix = ComplexMatrix<Real>;
  static_assert(Eigen::NumTraits<typename Derived::Scalar>::IsComplex, "expm expects a complex matrix");
  require_square(a, "expm input");
  require_finite(a, "expm input");
  if (!(accuracy > 0.0 && accuracy <= 1e-6)) {
    throw Error(ErrorCode::InvalidParameter, "expm accuracy must lie in (0, 1e-6]");
  }
  const Matrix m = a;
  const Real scale = std::max(Real(1), m.norm());
  const Real structure_tol = Real(100) * std::numeric_limits<Real>::epsilon();

  if ((m + m.adjoint()).norm() <= structure_tol * scale) {
    // A = -iB with B = iA Hermitian.
    const Matrix b = std::complex<Real>(0, 1) * m;
    const auto eig = eigh(b, 1.0);
    return spectral_apply(eig, [](Real w) { return std::polar(Real(1), -w); });
  }
  if ((m - m.adjoint()).norm() <= structure_tol * scale) {
    const auto eig = eigh(m, 1.0);
    return spectral_apply(eig, [](Real w) { return std::complex<Real>(std::exp(w), 0); });
  }
  if (auto diag = expm_diagonalizable<Real>(m, accuracy)) return *std::move(diag);
  return expm_taylor<Real>(m, accuracy);
}

}  // namespace linalg
}  // namespace zeno
