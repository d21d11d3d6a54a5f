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
#include <random>

#include "zeno/linalg.hpp"
#include "zeno/spectral.hpp"

namespace zeno::test {

inline const Complex kI{0.0, 1.0};

inline CMatrix random_matrix(Eigen::Index dim, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline CMatrix random_hermitian(Eigen::Index dim, std::mt19937& rng) {
  const CMatrix m = random_matrix(dim, rng);
  return (m + m.adjoint()) / 2.0;
}

inline CMatrix random_unitary(Eigen::Index dim, std::mt19937& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(dim, rng));
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

/// {Q_1 Q_1^H, I - Q_1 Q_1^H} from the first `rank` columns of a random unitary.
inline Resolution random_two_block(Eigen::Index dim, Eigen::Index rank, std::mt19937& rng) {
  const CMatrix q = random_unitary(dim, rng);
  const CMatrix p1 = q.leftCols(rank) * q.leftCols(rank).adjoint();
  const CMatrix p2 = CMatrix::Identity(dim, dim) - p1;
  return Resolution::indexed({p1, p2});
}

inline CVector random_unit_vector(Eigen::Index dim, std::mt19937& rng) {
  CVector v = random_matrix(dim, rng).col(0);
  return v / v.norm();
}

inline double maxabs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline CMatrix ket_bra(Eigen::Index dim, Eigen::Index i, Eigen::Index j) {
  CMatrix m = CMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

}  // namespace zeno::test
