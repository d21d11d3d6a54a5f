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
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "zeno/linalg.hpp"

namespace zeno {

/// How the labels of a resolution are to be read.
enum class LabelKind {
  Index,       // plain outcome index of a projective measurement
  Eigenvalue,  // eta_n of a Hermitian generator
  Phase,       // lambda_n in (-pi, pi], U = sum_n exp(-i lambda_n) P_n
};

/// Orthogonal resolution of the identity {P_n} with one label per projector.
/// Construction only checks shapes; validate() checks the algebraic invariants.
template <typename Real>
class BasicResolution {
 public:
  using Matrix = ComplexMatrix<Real>;

  BasicResolution(std::vector<Matrix> projectors, std::vector<Real> labels,
                  LabelKind kind = LabelKind::Index)
      : projectors_(std::move(projectors)), labels_(std::move(labels)), kind_(kind) {
    if (projectors_.empty()) throw Error(ErrorCode::InvalidParameter, "resolution needs at least one projector");
    if (labels_.size() != projectors_.size()) {
      throw Error(ErrorCode::InvalidParameter, "resolution needs one label per projector");
    }
    const auto d = projectors_.front().rows();
    for (const auto& p : projectors_) {
      linalg::require_square(p, "projector");
      if (p.rows() != d) throw Error(ErrorCode::DimensionMismatch, "projectors of different dimension");
    }
    ranks_.reserve(projectors_.size());
    for (const auto& p : projectors_) ranks_.push_back(static_cast<int>(std::lround(double(p.trace().real()))));
  }

  /// Labels 0, 1, 2, ... in the given order.
  static BasicResolution indexed(std::vector<Matrix> projectors) {
    std::vector<Real> labels(projectors.size());
    std::iota(labels.begin(), labels.end(), Real(0));
    return BasicResolution(std::move(projectors), std::move(labels), LabelKind::Index);
  }

  Eigen::Index dim() const { return projectors_.front().rows(); }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  const Matrix& projector(std::size_t n) const { return projectors_.at(n); }
  const std::vector<Real>& labels() const { return labels_; }
  const std::vector<int>& ranks() const { return ranks_; }
  LabelKind label_kind() const { return kind_; }

  /// sum_n label_n P_n
  Matrix label_operator() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t n = 0; n < size(); ++n) out += labels_[n] * projectors_[n];
    return out;
  }

  /// sum_n exp(-i label_n) P_n
  Matrix phase_operator() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t n = 0; n < size(); ++n) out += std::polar(Real(1), -labels_[n]) * projectors_[n];
    return out;
  }

 private:
  std::vector<Matrix> projectors_;
  std::vector<Real> labels_;
  std::vector<int> ranks_;
  LabelKind kind_;
};

using Resolution = BasicResolution<double>;

namespace spectral {

enum class Invariant { Hermitian, Idempotent, Orthogonal, Complete, DistinctLabels, Rank };

constexpr std::string_view to_string(Invariant inv) {
  switch (inv) {
    case Invariant::Hermitian: return "hermitian";
    case Invariant::Idempotent: return "idempotent";
    case Invariant::Orthogonal: return "orthogonal";
    case Invariant::Complete: return "complete";
    case Invariant::DistinctLabels: return "distinct-labels";
    case Invariant::Rank: return "rank";
  }
  return "unknown";
}

struct Violation {
  Invariant invariant;
  std::string where;  // e.g. "P_1", "P_0 P_1"
  double magnitude;
};

namespace detail {

template <typename Real>
Real wrap_phase(Real phase) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  phase = std::remainder(phase, Real(2) * pi);  // [-pi, pi]
  if (phase <= -pi) phase += Real(2) * pi;
  return phase;
}

template <typename Real>
Real circular_distance(Real a, Real b) {
  return std::abs(wrap_phase(a - b));
}

/// Boundary ambiguity: a gap between threshold/2 and 2*threshold.
template <typename Real>
void check_gap_unambiguous(Real gap, Real threshold) {
  if (gap > threshold / 2 && gap <= threshold * 2) {
    throw Error(ErrorCode::DegenerateClustering,
                "eigenvalue gap " + std::to_string(double(gap)) + " is within a factor 2 of the cluster threshold " +
                    std::to_string(double(threshold)));
  }
}

template <typename Real>
ComplexMatrix<Real> column_projector(const ComplexMatrix<Real>& vectors, const std::vector<Eigen::Index>& cols) {
  ComplexMatrix<Real> basis(vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = vectors.col(cols[k]);
  return basis * basis.adjoint();
}

}  // namespace detail

/// Reports every violated invariant with its magnitude. Never throws.
template <typename Real>
std::vector<Violation> validate(const BasicResolution<Real>& res, const Tolerances& tol = kTolerances) {
  using Matrix = ComplexMatrix<Real>;
  std::vector<Violation> out;
  const auto& ps = res.projectors();
  const auto d = res.dim();
  auto name = [](std::size_t n) { return "P_" + std::to_string(n); };

  Matrix sum = Matrix::Zero(d, d);
  int rank_sum = 0;
  for (std::size_t n = 0; n < ps.size(); ++n) {
    const Matrix& p = ps[n];
    sum += p;
    const double herm = double(linalg::opnorm((p - p.adjoint()).eval()));
    if (herm > tol.projector) out.push_back({Invariant::Hermitian, name(n), herm});
    const double idem = double(linalg::opnorm((p * p - p).eval()));
    if (idem > tol.projector) out.push_back({Invariant::Idempotent, name(n), idem});
    const double tr = double(p.trace().real());
    const double frac = std::abs(tr - std::round(tr));
    if (frac > tol.rank || res.ranks()[n] != static_cast<int>(std::lround(tr)) || res.ranks()[n] < 1) {
      out.push_back({Invariant::Rank, name(n), std::max(frac, std::abs(tr - res.ranks()[n]))});
    }
    rank_sum += res.ranks()[n];
  }
  for (std::size_t n = 0; n < ps.size(); ++n) {
    for (std::size_t m = n + 1; m < ps.size(); ++m) {
      const double overlap = double(linalg::opnorm((ps[n] * ps[m]).eval()));
      if (overlap > tol.projector) out.push_back({Invariant::Orthogonal, name(n) + " " + name(m), overlap});
    }
  }
  const double completeness = double(linalg::opnorm((sum - Matrix::Identity(d, d)).eval()));
  if (completeness > tol.projector) out.push_back({Invariant::Complete, "sum", completeness});
  if (rank_sum != d) out.push_back({Invariant::Rank, "sum", double(std::abs(rank_sum - d))});

  const auto& labels = res.labels();
  for (std::size_t n = 0; n < labels.size(); ++n) {
    for (std::size_t m = n + 1; m < labels.size(); ++m) {
      const double gap = res.label_kind() == LabelKind::Phase
                             ? double(detail::circular_distance(labels[n], labels[m]))
                             : double(std::abs(labels[n] - labels[m]));
      if (gap <= tol.cluster) out.push_back({Invariant::DistinctLabels, name(n) + " " + name(m), gap});
    }
  }
  return out;
}

/// Eigenprojections of a Hermitian operator, eigenvalues closer than
/// cluster_tol * max(1, |H|) merged. Ordered by ascending eigenvalue.
template <typename Derived>
BasicResolution<linalg::RealOf<Derived>> projections_of_hermitian(const Eigen::MatrixBase<Derived>& h,
                                                                  double cluster_tol = kTolerances.cluster) {
  using Real = linalg::RealOf<Derived>;
  using Matrix = ComplexMatrix<Real>;
  const auto eig = linalg::eigh(h);
  const auto& w = eig.eigenvalues;
  const Real scale = std::max(Real(1), w.cwiseAbs().maxCoeff());
  const Real threshold = Real(cluster_tol) * scale;

  std::vector<std::vector<Eigen::Index>> clusters{{0}};
  for (Eigen::Index k = 1; k < w.size(); ++k) {
    const Real gap = w(k) - w(k - 1);
    detail::check_gap_unambiguous(gap, threshold);
    if (gap > threshold) clusters.emplace_back();
    clusters.back().push_back(k);
  }

  std::vector<Matrix> projectors;
  std::vector<Real> labels;
  for (const auto& c : clusters) {
    Real mean = 0;
    for (auto k : c) mean += w(k);
    labels.push_back(mean / Real(c.size()));
    projectors.push_back(detail::column_projector(eig.eigenvectors, c));
  }
  return BasicResolution<Real>(std::move(projectors), std::move(labels), LabelKind::Eigenvalue);
}

/// Spectral projections of a unitary, U = sum_n exp(-i lambda_n) P_n with lambda_n in (-pi, pi].
/// Phases are clustered on the circle, so a cluster may straddle the branch cut.
template <typename Derived>
BasicResolution<linalg::RealOf<Derived>> projections_of_unitary(const Eigen::MatrixBase<Derived>& u,
                                                                double cluster_tol = kTolerances.cluster) {
  using Real = linalg::RealOf<Derived>;
  using Matrix = ComplexMatrix<Real>;
  constexpr Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  linalg::require_square(u, "unitary");
  linalg::require_finite(u, "unitary");
  const Real defect = linalg::unitarity_defect(u);
  if (defect > Real(kTolerances.unitarity)) {
    throw Error(ErrorCode::NotUnitary, "unitarity defect " + std::to_string(double(defect)));
  }

  // Schur vectors of a normal matrix are orthonormal eigenvectors, also inside degenerate eigenspaces.
  Eigen::ComplexSchur<Matrix> schur(u.eval());
  if (schur.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  const auto n = t.rows();

  std::vector<Real> phase(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) phase[k] = detail::wrap_phase(-std::arg(t(k, k)));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return phase[a] < phase[b]; });

  const Real threshold = Real(cluster_tol);
  std::vector<std::vector<Eigen::Index>> clusters{{order[0]}};
  for (Eigen::Index k = 1; k < n; ++k) {
    const Real gap = phase[order[k]] - phase[order[k - 1]];
    detail::check_gap_unambiguous(gap, threshold);
    if (gap > threshold) clusters.emplace_back();
    clusters.back().push_back(order[k]);
  }
  if (n > 1 && clusters.size() > 1) {
    const Real wrap_gap = phase[order[0]] + two_pi - phase[order[n - 1]];
    detail::check_gap_unambiguous(wrap_gap, threshold);
    if (wrap_gap <= threshold) {
      auto& first = clusters.front();
      first.insert(first.end(), clusters.back().begin(), clusters.back().end());
      clusters.pop_back();
    }
  }

  struct Sector {
    Real label;
    Matrix projector;
  };
  std::vector<Sector> sectors;
  for (const auto& c : clusters) {
    std::complex<Real> mean(0);
    for (auto k : c) mean += std::polar(Real(1), -phase[k]);
    sectors.push_back({detail::wrap_phase(-std::arg(mean)), detail::column_projector(q, c)});
  }
  std::sort(sectors.begin(), sectors.end(), [](const Sector& a, const Sector& b) { return a.label < b.label; });

  std::vector<Matrix> projectors;
  std::vector<Real> labels;
  for (auto& s : sectors) {
    labels.push_back(s.label);
    projectors.push_back(std::move(s.projector));
  }
  return BasicResolution<Real>(std::move(projectors), std::move(labels), LabelKind::Phase);
}

/// Nonselective measurement map X -> sum_n P_n X P_n.
template <typename Derived, typename Real>
ComplexMatrix<Real> pinch(const Eigen::MatrixBase<Derived>& x, const BasicResolution<Real>& res) {
  if (x.rows() != res.dim() || x.cols() != res.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pinch: operand and resolution dimensions differ");
  }
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(res.dim(), res.dim());
  for (const auto& p : res.projectors()) out.noalias() += p * x * p;
  return out;
}

/// Zeno Hamiltonian sum_n P_n H P_n.
template <typename Derived, typename Real>
ComplexMatrix<Real> zeno_hamiltonian(const Eigen::MatrixBase<Derived>& h, const BasicResolution<Real>& res) {
  linalg::require_square(h, "Hamiltonian");
  if (!linalg::is_hermitian(h)) throw Error(ErrorCode::NotHermitian, "zeno_hamiltonian needs a Hermitian H");
  return pinch(h, res);
}

/// True if both resolutions contain the same projectors, in any order.
template <typename Real>
bool same_projectors(const BasicResolution<Real>& a, const BasicResolution<Real>& b, double tol) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& p : a.projectors()) {
    bool found = false;
    for (std::size_t m = 0; m < b.size() && !found; ++m) {
      if (!used[m] && (p - b.projector(m)).cwiseAbs().maxCoeff() <= tol) used[m] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace spectral
}  // namespace zeno
