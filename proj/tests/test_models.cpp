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

#include "support.hpp"
#include "zeno/models.hpp"

using namespace zeno;
using zeno::test::kI;
using zeno::test::maxabs;
using models::kA;
using models::kB;
using models::kC;
using models::kM;

namespace {

CMatrix expected_hz3(double omega1) {
  CMatrix hz = CMatrix::Zero(3, 3);
  hz(kA, kB) = hz(kB, kA) = omega1;
  return hz;
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

TEST_CASE("three-level projective model") {
  const auto b = models::three_level_projective(1.0, 1.0);
  CMatrix want = CMatrix::Zero(3, 3);
  want(kA, kB) = want(kB, kA) = want(kB, kC) = want(kC, kB) = 1.0;
  CHECK(maxabs(b.h - want) == 0.0);
  CHECK(b.mechanism() == Mechanism::Projective);
  CHECK(b.resolution().ranks() == std::vector<int>{2, 1});
  CHECK(b.protected_subspace == 0);
  CHECK(maxabs(b.zeno_hamiltonian() - expected_hz3(1.0)) == 0.0);

  const auto decoupled = models::three_level_projective(1.0, 0.0);
  CHECK(maxabs(spectral::pinch(decoupled.h, decoupled.resolution()) - decoupled.h) == 0.0);
}

TEST_CASE("four-level kicked model") {
  const auto b = models::four_level_kicked(1.0, 1.0, 0.0, 1.0);
  CMatrix u = CMatrix::Zero(4, 4);
  u(kA, kA) = u(kB, kB) = 1.0;
  u(kC, kC) = u(kM, kM) = std::cos(1.0);
  u(kC, kM) = u(kM, kC) = -kI * std::sin(1.0);
  CHECK(maxabs(b.u_kick() - u) < 1e-15);
  CHECK(b.mechanism() == Mechanism::Kicked);
  // the kick is exp(-i lambda2 (|c><M| + |M><c|)) on {c, M}
  CMatrix flip = CMatrix::Zero(4, 4);
  flip(kC, kM) = flip(kM, kC) = 1.0;
  CHECK(maxabs(linalg::propagator(flip, 1.0) - b.u_kick()) < 1e-14);

  CMatrix hz = CMatrix::Zero(4, 4);
  hz(kA, kB) = hz(kB, kA) = 1.0;
  CHECK(maxabs(b.zeno_hamiltonian() - hz) < 1e-14);
  const auto res = b.zeno_resolution();
  CHECK(maxabs(res.projector(std::size_t(b.protected_subspace)) - (test::ket_bra(4, kA, kA) + test::ket_bra(4, kB, kB))) <
        1e-13);
}

TEST_CASE("four-level kicked model rejects coincident phases") {
  CHECK(code_of([] { models::four_level_kicked(1, 1, 1.0, 1.0); }) == ErrorCode::DegenerateKickPhases);
  CHECK(code_of([] { models::four_level_kicked(1, 1, -1.0, 1.0); }) == ErrorCode::DegenerateKickPhases);
  CHECK(code_of([] { models::four_level_kicked(1, 1, 0.0, 2 * std::numbers::pi); }) == ErrorCode::DegenerateKickPhases);
  CHECK(code_of([] { models::four_level_kicked(1, 1, 0.5, std::numbers::pi); }) == ErrorCode::DegenerateKickPhases);
  CHECK_NOTHROW(models::four_level_kicked(1, 1, 0.5, 2.0));
}

TEST_CASE("four-level continuous model") {
  const auto b = models::four_level_continuous(1.0, 1.0, 1.0);
  CMatrix hc = CMatrix::Zero(4, 4);
  hc(kC, kM) = hc(kM, kC) = 1.0;
  CHECK(maxabs(b.h_c() - hc) == 0.0);
  CHECK(b.coupling() == 1.0);
  const auto res = b.zeno_resolution();
  CHECK(res.labels().size() == 3);
  CHECK(spectral::same_projectors(res, models::four_level_kicked(1, 1, 0, 1).zeno_resolution(), 1e-12));
  CVector plus = CVector::Zero(4);
  plus(kC) = plus(kM) = 1.0 / std::sqrt(2.0);
  CHECK((b.h_c() * plus - plus).norm() < 1e-15);
  CHECK(code_of([] { models::four_level_continuous(1, 1, -1.0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("simplified kick and coupling live on the original space") {
  const auto k = models::simplified_kicked(1.0, 1.0, 0.0, 1.0);
  CMatrix cc = CMatrix::Zero(3, 3);
  cc(kC, kC) = 1.0;
  CHECK(maxabs(k.u_kick() - linalg::propagator(cc, 1.0)) < 1e-12);
  CHECK(maxabs(k.zeno_hamiltonian() - expected_hz3(1.0)) < 1e-12);

  const auto c = models::simplified_continuous(1.0, 1.0, 0.0, 1.0, 5.0);
  CHECK(maxabs(c.h_c() - cc) == 0.0);
  CHECK(maxabs(c.zeno_hamiltonian() - expected_hz3(1.0)) < 1e-12);
  CHECK(code_of([] { models::simplified_kicked(1, 1, 0.3, 0.3 + 2 * std::numbers::pi); }) ==
        ErrorCode::DegenerateKickPhases);
  CHECK(code_of([] { models::simplified_continuous(1, 1, 0.4, 0.4, 1); }) == ErrorCode::DegenerateCouplingLevels);
}

TEST_CASE("the three mechanisms share one Zeno Hamiltonian on {a, b, c}") {
  for (double omega1 : {0.5, 1.0, 2.0}) {
    for (double omega2 : {0.3, 1.0}) {
      const CMatrix proj = models::three_level_projective(omega1, omega2).zeno_hamiltonian();
      const CMatrix kick = models::four_level_kicked(omega1, omega2, 0.0, 1.0).zeno_hamiltonian().topLeftCorner(3, 3);
      const CMatrix cont = models::four_level_continuous(omega1, omega2, 1.0).zeno_hamiltonian().topLeftCorner(3, 3);
      CHECK(maxabs(proj - kick) <= 1e-12);
      CHECK(maxabs(proj - cont) <= 1e-12);
      CHECK(maxabs(proj - expected_hz3(omega1)) <= 1e-12);
    }
  }
}

TEST_CASE("decay model matrix") {
  const auto b = models::decay_model(1.0, 1.0, 0.1, 0.0);
  CMatrix want = CMatrix::Zero(4, 4);
  want(kA, kB) = want(kB, kA) = 1.0;
  want(kB, kC) = want(kC, kB) = 1.0;
  want(kC, kC) = Complex(0.0, -20.0);
  CHECK(maxabs(b.h - want) < 1e-14);
  CHECK(b.non_hermitian);
  CHECK_FALSE(b.interpreted);
  CHECK(code_of([&] { b.zeno_hamiltonian(); }) == ErrorCode::NotHermitian);

  const auto coupled = models::decay_model(1.0, 1.0, 0.1, 3.0);
  const CMatrix hk = coupled.h + coupled.coupling() * coupled.h_c();
  CHECK(hk(kC, kM) == Complex(3.0));
  CHECK(hk(kM, kC) == Complex(3.0));

  const auto shifted = models::decay_model(1.0, 1.0, 0.1, 0.0, 0.25);
  CHECK(shifted.h(kB, kB) == Complex(0.25));
  CHECK(shifted.interpreted);

  CHECK(code_of([] { models::decay_model(1, 0.0, 0.1, 0); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { models::decay_model(1, 1, -0.1, 0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("vacuum reference constants are consistent") {
  CHECK(1.0 / (models::vacuum::zeno_time_squared * models::vacuum::decay_rate) ==
        doctest::Approx(models::vacuum::inverse_zeno_scale));
}

TEST_CASE("Hermitian-flagged bundles are Hermitian") {
  for (const auto& info : models::catalog()) {
    const auto b = models::make(info.name, {});
    CHECK(b.name == info.name);
    if (!b.non_hermitian) CHECK(linalg::hermiticity_defect(b.h) <= 1e-12);
  }
}

TEST_CASE("make fills defaults and rejects unknown names and parameters") {
  const auto b = models::make("four_level_kicked", {{"lambda2", 2.0}});
  CHECK(b.parameters.at("lambda2") == 2.0);
  CHECK(b.parameters.at("omega1") == 1.0);
  CHECK(code_of([] { models::make("nope", {}); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { models::make("three_level_projective", {{"K", 1.0}}); }) == ErrorCode::SchemaViolation);
}
