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

#include "support.hpp"
#include "zeno/models.hpp"
#include "zeno/spectral.hpp"

using namespace zeno;
using zeno::test::kI;
using zeno::test::maxabs;
using models::kA;
using models::kB;
using models::kC;
using models::kM;

namespace {

CMatrix diag_projector(Eigen::Index dim, std::initializer_list<Eigen::Index> idx) {
  CMatrix p = CMatrix::Zero(dim, dim);
  for (auto k : idx) p(k, k) = 1.0;
  return p;
}

// (|c> + s|M>)(<c| + s<M|)/2
CMatrix p_pm(double s) {
  CVector v = CVector::Zero(4);
  v(kC) = 1.0;
  v(kM) = s;
  return v * v.adjoint() / 2.0;
}

bool has_violation(const std::vector<spectral::Violation>& vs, spectral::Invariant inv) {
  for (const auto& v : vs)
    if (v.invariant == inv) return true;
  return false;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("validate accepts the measurement resolution and the trivial one") {
  const auto bundle = models::three_level_projective(1.0, 1.0);
  CHECK(spectral::validate(bundle.resolution()).empty());
  CHECK(spectral::validate(Resolution::indexed({CMatrix::Identity(3, 3)})).empty());
}

TEST_CASE("validate reports a duplicated projector") {
  const CMatrix p1 = diag_projector(3, {kA, kB});
  const auto vs = spectral::validate(Resolution::indexed({p1, p1}));
  CHECK(has_violation(vs, spectral::Invariant::Orthogonal));
  CHECK(has_violation(vs, spectral::Invariant::Complete));
  for (const auto& v : vs) CHECK(v.magnitude > 0.0);
}

TEST_CASE("validate reports non-projectors and repeated labels") {
  CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  auto vs = spectral::validate(Resolution::indexed({half, half}));
  CHECK(has_violation(vs, spectral::Invariant::Idempotent));
  CMatrix skew = diag_projector(2, {0});
  skew(0, 1) = 0.3;
  vs = spectral::validate(Resolution::indexed({skew, CMatrix::Identity(2, 2) - skew}));
  CHECK(has_violation(vs, spectral::Invariant::Hermitian));
  const Resolution same_label({diag_projector(2, {0}), diag_projector(2, {1})}, {0.5, 0.5}, LabelKind::Eigenvalue);
  CHECK(has_violation(spectral::validate(same_label), spectral::Invariant::DistinctLabels));
  // phases 1e-12 apart across the branch cut are the same point on the circle
  const Resolution wrapped({diag_projector(2, {0}), diag_projector(2, {1})},
                           {std::numbers::pi, -std::numbers::pi + 1e-12}, LabelKind::Phase);
  CHECK(has_violation(spectral::validate(wrapped), spectral::Invariant::DistinctLabels));
}

TEST_CASE("projections_of_hermitian on the measurement coupling") {
  const auto bundle = models::four_level_continuous(1.0, 1.0, 1.0);
  const auto res = spectral::projections_of_hermitian(bundle.h_c());
  REQUIRE(res.size() == 3);
  CHECK(spectral::validate(res).empty());
  CHECK(res.labels()[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(res.labels()[1]) < 1e-14);
  CHECK(res.labels()[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(maxabs(res.projector(0) - p_pm(-1)) < 1e-13);
  CHECK(maxabs(res.projector(1) - diag_projector(4, {kA, kB})) < 1e-13);
  CHECK(maxabs(res.projector(2) - p_pm(+1)) < 1e-13);
  CHECK(res.ranks() == std::vector<int>{1, 2, 1});
}

TEST_CASE("projections_of_hermitian on |c><c| and on zero") {
  const auto res = spectral::projections_of_hermitian(diag_projector(3, {kC}));
  REQUIRE(res.size() == 2);
  CHECK(maxabs(res.projector(0) - diag_projector(3, {kA, kB})) < 1e-14);
  CHECK(maxabs(res.projector(1) - diag_projector(3, {kC})) < 1e-14);
  CHECK(res.labels()[0] == doctest::Approx(0.0));
  CHECK(res.labels()[1] == doctest::Approx(1.0));

  const auto zero = spectral::projections_of_hermitian(CMatrix::Zero(3, 3).eval());
  REQUIRE(zero.size() == 1);
  CHECK(maxabs(zero.projector(0) - CMatrix::Identity(3, 3)) < 1e-14);
  CHECK(zero.labels()[0] == 0.0);
}

TEST_CASE("projections_of_hermitian merges close eigenvalues and flags ambiguous gaps") {
  CMatrix h = CMatrix::Zero(3, 3);
  h(1, 1) = 1e-12;
  h(2, 2) = 1.0;
  CHECK(spectral::projections_of_hermitian(h).size() == 2);
  h(1, 1) = 1.5e-8;
  CHECK(code_of([&] { spectral::projections_of_hermitian(h); }) == ErrorCode::DegenerateClustering);
  h(1, 1) = 1e-6;
  CHECK(spectral::projections_of_hermitian(h).size() == 3);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK(code_of([&] { spectral::projections_of_hermitian(bad); }) == ErrorCode::NotHermitian);
}

TEST_CASE("projections_of_unitary on the four-level kick") {
  const auto bundle = models::four_level_kicked(1.0, 1.0, 0.0, 1.0);
  const auto res = spectral::projections_of_unitary(bundle.u_kick());
  REQUIRE(res.size() == 3);
  CHECK(spectral::validate(res).empty());
  CHECK(res.label_kind() == LabelKind::Phase);
  CHECK(res.labels()[0] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(res.labels()[1]) < 1e-13);
  CHECK(res.labels()[2] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(maxabs(res.projector(0) - p_pm(-1)) < 1e-12);
  CHECK(maxabs(res.projector(1) - diag_projector(4, {kA, kB})) < 1e-12);
  CHECK(maxabs(res.projector(2) - p_pm(+1)) < 1e-12);
  CHECK(maxabs(res.phase_operator() - bundle.u_kick()) < 1e-12);
}

TEST_CASE("projections_of_unitary on the identity and on exp(-i|c><c|)") {
  const auto id = spectral::projections_of_unitary(CMatrix::Identity(3, 3).eval());
  REQUIRE(id.size() == 1);
  CHECK(std::abs(id.labels()[0]) < 1e-15);

  CMatrix u = CMatrix::Identity(3, 3);
  u(kC, kC) = std::polar(1.0, -1.0);
  const auto res = spectral::projections_of_unitary(u);
  REQUIRE(res.size() == 2);
  CHECK(std::abs(res.labels()[0]) < 1e-14);
  CHECK(res.labels()[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(maxabs(res.projector(0) - diag_projector(3, {kA, kB})) < 1e-13);
  CHECK(maxabs(res.projector(1) - diag_projector(3, {kC})) < 1e-13);
}

TEST_CASE("projections_of_unitary clusters across the branch cut") {
  CMatrix u = CMatrix::Zero(3, 3);
  u(0, 0) = std::polar(1.0, -(std::numbers::pi - 1e-12));
  u(1, 1) = std::polar(1.0, -(-std::numbers::pi + 1e-12));
  u(2, 2) = 1.0;
  const auto res = spectral::projections_of_unitary(u);
  REQUIRE(res.size() == 2);
  CHECK(std::abs(std::abs(res.labels()[1]) - std::numbers::pi) < 1e-10);
  CHECK(res.ranks()[1] == 2);
  CHECK(code_of([] { spectral::projections_of_unitary((2.0 * CMatrix::Identity(2, 2)).eval()); }) ==
        ErrorCode::NotUnitary);
}

TEST_CASE("hermitian and unitary decompositions of the coupling agree") {
  const auto bundle = models::four_level_continuous(1.0, 1.0, 1.0);
  const auto from_h = spectral::projections_of_hermitian(bundle.h_c());
  const auto from_u = spectral::projections_of_unitary(linalg::propagator(bundle.h_c(), 1.0));
  CHECK(spectral::same_projectors(from_h, from_u, 1e-12));
}

TEST_CASE("pinch examples") {
  const auto bundle = models::three_level_projective(1.0, 1.0);
  const auto& res = bundle.resolution();
  CMatrix block = CMatrix::Zero(3, 3);
  block(0, 1) = 0.4;
  block(1, 0) = -0.2 * kI;
  block(2, 2) = 3.0;
  CHECK(maxabs(spectral::pinch(block, res) - block) == 0.0);

  CMatrix want = CMatrix::Zero(3, 3);
  want(kA, kB) = want(kB, kA) = 1.0;
  CHECK(maxabs(spectral::pinch(bundle.h, res) - want) < 1e-15);
  CHECK(maxabs(spectral::zeno_hamiltonian(bundle.h, res) - want) < 1e-15);

  const CMatrix cross = test::ket_bra(3, kB, kC) + test::ket_bra(3, kC, kB);
  CHECK(maxabs(spectral::pinch(cross, res)) == 0.0);
  CHECK_THROWS_AS(spectral::pinch(CMatrix::Zero(2, 2).eval(), res), Error);
}

TEST_CASE("pinch is idempotent, trace preserving and Hermiticity preserving") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const auto res = test::random_two_block(d, 1 + trial % (d - 1), rng);
    const CMatrix x = test::random_hermitian(d, rng);
    const CMatrix once = spectral::pinch(x, res);
    CHECK(maxabs(spectral::pinch(once, res) - once) <= 1e-10);
    CHECK(std::abs(once.trace() - x.trace()) <= 1e-12 * std::max(1.0, x.norm()));
    CHECK(linalg::hermiticity_defect(once) <= 1e-12);
    const CMatrix g = test::random_matrix(d, rng);
    CHECK(std::abs(spectral::pinch(g, res).trace() - g.trace()) <= 1e-12 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("Zeno Hamiltonian commutes with every projector and the label operator") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = test::random_hermitian(4, rng);
    const auto res = test::random_two_block(4, 1 + trial % 3, rng);
    const CMatrix hz = spectral::zeno_hamiltonian(h, res);
    for (const auto& p : res.projectors()) CHECK(maxabs(linalg::commutator(hz, p).eval()) <= 1e-10);
  }
  const auto kicked = models::four_level_kicked(1.0, 1.0, 0.0, 1.0);
  const auto kres = kicked.zeno_resolution();
  const CMatrix hz = spectral::zeno_hamiltonian(kicked.h, kres);
  CHECK(maxabs(linalg::commutator(hz, kres.label_operator()).eval()) <= 1e-10);
  CHECK(maxabs(linalg::commutator(hz, kicked.u_kick()).eval()) <= 1e-10);
}

TEST_CASE("Zeno Hamiltonian with the trivial resolution or with its own eigenprojections is H") {
  std::mt19937 rng(29);
  const CMatrix h = test::random_hermitian(4, rng);
  CHECK(maxabs(spectral::zeno_hamiltonian(h, Resolution::indexed({CMatrix::Identity(4, 4)})) - h) < 1e-15);
  const auto own = spectral::projections_of_hermitian(h);
  CHECK(own.size() == 4);
  CHECK(maxabs(spectral::zeno_hamiltonian(h, own) - h) <= 1e-12);
}
