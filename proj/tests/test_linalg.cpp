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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"
#include "zeno/error.hpp"
#include "zeno/linalg.hpp"
#include "zeno/models.hpp"

using namespace zeno;
using zeno::test::kI;

namespace {

CMatrix sigma_x() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

}  // namespace

TEST_CASE("eigh of the zero matrix") {
  const auto eig = linalg::eigh(CMatrix::Zero(3, 3).eval());
  CHECK(eig.eigenvalues.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(linalg::is_unitary(eig.eigenvectors));
}

TEST_CASE("eigh of the three-level Hamiltonian") {
  // characteristic polynomial x^3 - 2x = 0
  const auto eig = linalg::eigh(models::three_level_hamiltonian(1.0, 1.0));
  CHECK(eig.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvalues(1)) < 1e-14);
  CHECK(eig.eigenvalues(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("eigh of the measurement coupling") {
  const auto bundle = models::four_level_continuous(1.0, 1.0, 1.0);
  const auto eig = linalg::eigh((bundle.coupling() * bundle.h_c()).eval());
  const double want[] = {-1, 0, 0, 1};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(eig.eigenvalues(k) - want[k]) < 1e-14);
}

TEST_CASE("eigh reconstructs and orders random Hermitian input") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index d = 1 + trial % 6;
    const CMatrix h = test::random_hermitian(d, rng);
    const auto eig = linalg::eigh(h);
    const CMatrix& v = eig.eigenvectors;
    const CMatrix back = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK(linalg::opnorm((back - h).eval()) <= 1e-10 * linalg::opnorm(h));
    CHECK(linalg::opnorm((v.adjoint() * v - CMatrix::Identity(d, d)).eval()) <= 1e-12 * double(d));
    for (Eigen::Index k = 1; k < d; ++k) CHECK(eig.eigenvalues(k - 1) <= eig.eigenvalues(k));
  }
}

TEST_CASE("eigh rejects non-Hermitian and non-finite input") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(linalg::eigh(a), Error);
  try {
    linalg::eigh(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CMatrix b = CMatrix::Identity(2, 2);
  b(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    linalg::eigh(b);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
  CHECK_THROWS_AS(linalg::eigh(CMatrix::Zero(2, 3).eval()), Error);
}

TEST_CASE("expm of zero is the identity") {
  const CMatrix e = linalg::expm(CMatrix::Zero(4, 4).eval());
  CHECK(test::maxabs(e - CMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("expm(-i pi sigma_x) = -I") {
  const CMatrix e = linalg::expm((-kI * std::numbers::pi * sigma_x()).eval());
  CHECK(test::maxabs(e + CMatrix::Identity(2, 2)) < 1e-14);
  // series oracle, independent of the eigen path
  const CMatrix oracle = (-kI * std::numbers::pi * sigma_x()).eval().exp();
  CHECK(test::maxabs(e - oracle) < 1e-12);
}

TEST_CASE("expm of the Zeno Hamiltonian gives the cos/sin block") {
  const auto bundle = models::four_level_kicked(1.0, 1.0, 0.0, 1.0);
  for (double t : {0.3, 1.0, 2.5}) {
    const CMatrix u = linalg::expm((-kI * t * bundle.zeno_hamiltonian()).eval());
    CMatrix want = CMatrix::Identity(4, 4);
    want(0, 0) = want(1, 1) = std::cos(t);
    want(0, 1) = want(1, 0) = -kI * std::sin(t);
    CHECK(test::maxabs(u - want) < 1e-13);
  }
}

TEST_CASE("Taylor kernel matches the series oracle on general matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = 1 + trial % 5;
    const double scale = std::pow(10.0, (trial % 5) - 3.0);
    const CMatrix a = scale * test::random_matrix(d, rng);
    const CMatrix oracle = a.exp();
    const CMatrix e = linalg::expm(a);
    CHECK(linalg::opnorm((e - oracle).eval()) <= 1e-11 * linalg::opnorm(oracle));
    CHECK(linalg::opnorm((linalg::expm_taylor(a, 1e-12) - oracle).eval()) <= 1e-11 * linalg::opnorm(oracle));
  }
}

TEST_CASE("expm of a non-Hermitian decay generator matches the oracle") {
  const auto bundle = models::decay_model(1.0, 1.0, 0.1, 3.0);
  const CMatrix a = (-kI * 2.0 * bundle.h).eval();
  const CMatrix oracle = a.exp();
  CHECK(linalg::opnorm((linalg::expm(a) - oracle).eval()) <= 1e-11 * std::max(1.0, linalg::opnorm(oracle)));
}

TEST_CASE("expm of a stiff 2x2 decay block matches the closed form") {
  // Sylvester: exp(A) = (e^l1 (A - l2) - e^l2 (A - l1)) / (l1 - l2) for distinct eigenvalues l1, l2
  for (double rate : {20.0, 2e4, 2e9}) {
    CMatrix a(2, 2);
    a << 0, 1, 1, Complex(0, -rate);
    for (double t : {0.5, 2.0}) {
      const CMatrix x = (-kI * t * a).eval();
      const Complex mu = x.trace() / 2.0;
      const Complex d = std::sqrt(mu * mu - x.determinant());
      // the small eigenvalue from det / l1 avoids cancellation in mu - d
      const Complex l1 = std::abs(mu + d) >= std::abs(mu - d) ? mu + d : mu - d;
      const Complex l2 = x.determinant() / l1;
      const CMatrix id = CMatrix::Identity(2, 2);
      const CMatrix want = (std::exp(l1) * (x - l2 * id) - std::exp(l2) * (x - l1 * id)) / (l1 - l2);
      const CMatrix got = linalg::expm(x);
      CHECK(linalg::opnorm((got - want).eval()) <= 1e-12 * linalg::opnorm(want));
    }
  }
}

TEST_CASE("expm is unitary for anti-Hermitian input up to |t| |H| = 1e3") {
  std::mt19937 rng(7);
  for (double target : {1e-3, 1.0, 10.0, 100.0, 1000.0}) {
    const CMatrix h = test::random_hermitian(5, rng);
    const double t = target / linalg::opnorm(h);
    const CMatrix u = linalg::expm((-kI * t * h).eval());
    CHECK(linalg::unitarity_defect(u) <= 1e-10);
    CHECK(linalg::unitarity_defect(linalg::propagator(h, t)) <= 1e-10);
  }
}

TEST_CASE("expm(A + B) = expm(A) expm(B) for commuting block-diagonal pairs") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix a = CMatrix::Zero(5, 5), b = CMatrix::Zero(5, 5);
    // each block: two polynomials in the same Hermitian, so they commute blockwise
    const CMatrix h2 = test::random_hermitian(2, rng), h3 = test::random_hermitian(3, rng);
    a.topLeftCorner(2, 2) = -kI * h2;
    b.topLeftCorner(2, 2) = -kI * (h2 * h2 - 0.5 * h2);
    a.bottomRightCorner(3, 3) = -kI * h3;
    b.bottomRightCorner(3, 3) = 0.3 * h3 * h3;  // non-unitary factor, general path
    CHECK(test::maxabs(linalg::commutator(a, b).eval()) < 1e-12);
    const CMatrix lhs = linalg::expm((a + b).eval());
    const CMatrix rhs = linalg::expm(a) * linalg::expm(b);
    CHECK(linalg::opnorm((lhs - rhs).eval()) <= 1e-10 * std::max(1.0, linalg::opnorm(lhs)));
  }
}

TEST_CASE("expm validates accuracy and reports overflow") {
  CHECK_THROWS_AS(linalg::expm(CMatrix::Identity(2, 2).eval(), 0.0), Error);
  CHECK_THROWS_AS(linalg::expm(CMatrix::Identity(2, 2).eval(), 1e-3), Error);
  CMatrix big = CMatrix::Zero(2, 2);
  big(0, 0) = 1e3;
  big(0, 1) = 1.0;
  try {
    linalg::expm(big);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConvergenceFailure);
  }
}

TEST_CASE("opnorm examples") {
  CHECK(linalg::opnorm(CMatrix::Identity(4, 4).eval()) == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937 rng(2);
  const auto res = test::random_two_block(4, 2, rng);
  CHECK(linalg::opnorm((2.0 * res.projector(0)).eval()) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(linalg::opnorm(CMatrix::Zero(3, 3).eval()) == 0.0);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = test::random_matrix(3, rng);
    const double op = linalg::opnorm(a), frob = a.norm();
    CHECK(op >= 0.0);
    CHECK(op <= frob * (1 + 1e-14));
    CHECK(frob <= std::sqrt(3.0) * op * (1 + 1e-14));
  }
}

TEST_CASE("long double instantiation") {
  using LMatrix = ComplexMatrix<long double>;
  LMatrix h = LMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = 1.0L;
  const LMatrix u = linalg::propagator(h, std::numbers::pi_v<long double>);
  CHECK(double((u + LMatrix::Identity(2, 2)).cwiseAbs().maxCoeff()) < 1e-17);
}
