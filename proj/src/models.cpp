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

#include "zeno/models.hpp"

#include <cmath>

namespace zeno::models {
namespace {

const Complex kI(0.0, 1.0);

CMatrix diag_projector(Eigen::Index dim, std::initializer_list<Eigen::Index> levels) {
  CMatrix p = CMatrix::Zero(dim, dim);
  for (auto k : levels) p(k, k) = 1.0;
  return p;
}

// |c><M| + |M><c|
CMatrix cm_flip() {
  CMatrix x = CMatrix::Zero(4, 4);
  x(kC, kM) = x(kM, kC) = 1.0;
  return x;
}

void require_distinct_phases(const std::vector<double>& phases) {
  for (std::size_t i = 0; i < phases.size(); ++i) {
    for (std::size_t j = i + 1; j < phases.size(); ++j) {
      if (spectral::detail::circular_distance(phases[i], phases[j]) <= kTolerances.cluster) {
        throw Error(ErrorCode::DegenerateKickPhases,
                    "kick eigenphases " + std::to_string(phases[i]) + " and " + std::to_string(phases[j]) +
                        " coincide modulo 2 pi");
      }
    }
  }
}

int find_sector(const Resolution& res, const CMatrix& target) {
  for (std::size_t n = 0; n < res.size(); ++n) {
    if ((res.projector(n) - target).cwiseAbs().maxCoeff() <= 1e-8) return static_cast<int>(n);
  }
  throw Error(ErrorCode::InvalidState, "protected subspace not found among the Zeno sectors");
}

}  // namespace

Mechanism ModelBundle::mechanism() const {
  if (std::holds_alternative<ProjectivePayload>(payload)) return Mechanism::Projective;
  if (std::holds_alternative<KickedPayload>(payload)) return Mechanism::Kicked;
  return Mechanism::Continuous;
}

const Resolution& ModelBundle::resolution() const {
  if (const auto* p = std::get_if<ProjectivePayload>(&payload)) return p->res;
  throw Error(ErrorCode::InvalidParameter, name + " has no projective payload");
}

const CMatrix& ModelBundle::u_kick() const {
  if (const auto* p = std::get_if<KickedPayload>(&payload)) return p->u_kick;
  throw Error(ErrorCode::InvalidParameter, name + " has no kick payload");
}

const CMatrix& ModelBundle::h_c() const {
  if (const auto* p = std::get_if<ContinuousPayload>(&payload)) return p->h_c;
  throw Error(ErrorCode::InvalidParameter, name + " has no continuous-coupling payload");
}

double ModelBundle::coupling() const {
  if (const auto* p = std::get_if<ContinuousPayload>(&payload)) return p->coupling;
  throw Error(ErrorCode::InvalidParameter, name + " has no continuous-coupling payload");
}

Resolution ModelBundle::zeno_resolution() const {
  switch (mechanism()) {
    case Mechanism::Projective: return resolution();
    case Mechanism::Kicked: return spectral::projections_of_unitary(u_kick());
    default: return spectral::projections_of_hermitian(h_c());
  }
}

CMatrix ModelBundle::zeno_hamiltonian() const {
  if (non_hermitian) throw Error(ErrorCode::NotHermitian, name + " has a non-Hermitian Hamiltonian");
  return spectral::zeno_hamiltonian(h, zeno_resolution());
}

CMatrix three_level_hamiltonian(double omega1, double omega2, Eigen::Index dim) {
  CMatrix h = CMatrix::Zero(dim, dim);
  h(kA, kB) = h(kB, kA) = omega1;
  h(kB, kC) = h(kC, kB) = omega2;
  return h;
}

ModelBundle three_level_projective(double omega1, double omega2) {
  ModelBundle b;
  b.name = "three_level_projective";
  b.h = three_level_hamiltonian(omega1, omega2);
  b.payload = ProjectivePayload{Resolution::indexed({diag_projector(3, {kA, kB}), diag_projector(3, {kC})})};
  b.parameters = {{"omega1", omega1}, {"omega2", omega2}};
  b.protected_subspace = 0;
  return b;
}

ModelBundle four_level_kicked(double omega1, double omega2, double lambda1, double lambda2) {
  // Eigenphases are lambda1 on P_1 and +-lambda2 on P_+-; all three must differ.
  require_distinct_phases({lambda1, lambda2, -lambda2});
  ModelBundle b;
  b.name = "four_level_kicked";
  b.h = three_level_hamiltonian(omega1, omega2, 4);
  CMatrix u = CMatrix::Zero(4, 4);
  u(kA, kA) = u(kB, kB) = std::polar(1.0, -lambda1);
  u(kC, kC) = u(kM, kM) = std::cos(lambda2);
  u(kC, kM) = u(kM, kC) = -kI * std::sin(lambda2);
  b.payload = KickedPayload{u};
  b.parameters = {{"omega1", omega1}, {"omega2", omega2}, {"lambda1", lambda1}, {"lambda2", lambda2}};
  b.protected_subspace = find_sector(b.zeno_resolution(), diag_projector(4, {kA, kB}));
  return b;
}

ModelBundle four_level_continuous(double omega1, double omega2, double coupling) {
  if (!(coupling >= 0.0)) throw Error(ErrorCode::InvalidParameter, "K must be >= 0");
  ModelBundle b;
  b.name = "four_level_continuous";
  b.h = three_level_hamiltonian(omega1, omega2, 4);
  b.payload = ContinuousPayload{cm_flip(), coupling};
  b.parameters = {{"omega1", omega1}, {"omega2", omega2}, {"K", coupling}};
  b.protected_subspace = find_sector(b.zeno_resolution(), diag_projector(4, {kA, kB}));
  return b;
}

ModelBundle simplified_kicked(double omega1, double omega2, double lambda1, double lambda2) {
  require_distinct_phases({lambda1, lambda2});
  ModelBundle b;
  b.name = "simplified_kicked";
  b.h = three_level_hamiltonian(omega1, omega2);
  b.payload = KickedPayload{std::polar(1.0, -lambda1) * diag_projector(3, {kA, kB}) +
                            std::polar(1.0, -lambda2) * diag_projector(3, {kC})};
  b.parameters = {{"omega1", omega1}, {"omega2", omega2}, {"lambda1", lambda1}, {"lambda2", lambda2}};
  b.protected_subspace = find_sector(b.zeno_resolution(), diag_projector(3, {kA, kB}));
  return b;
}

ModelBundle simplified_continuous(double omega1, double omega2, double eta1, double eta2, double coupling) {
  if (std::abs(eta1 - eta2) <= kTolerances.cluster * std::max({1.0, std::abs(eta1), std::abs(eta2)})) {
    throw Error(ErrorCode::DegenerateCouplingLevels, "eta1 and eta2 must differ");
  }
  if (!(coupling >= 0.0)) throw Error(ErrorCode::InvalidParameter, "K must be >= 0");
  ModelBundle b;
  b.name = "simplified_continuous";
  b.h = three_level_hamiltonian(omega1, omega2);
  b.payload = ContinuousPayload{eta1 * diag_projector(3, {kA, kB}) + eta2 * diag_projector(3, {kC}), coupling};
  b.parameters = {{"omega1", omega1}, {"omega2", omega2}, {"eta1", eta1}, {"eta2", eta2}, {"K", coupling}};
  b.protected_subspace = find_sector(b.zeno_resolution(), diag_projector(3, {kA, kB}));
  return b;
}

ModelBundle decay_model(double omega1, double tau_z, double gamma, double coupling, double omega_b) {
  if (!(tau_z > 0.0)) throw Error(ErrorCode::InvalidParameter, "tau_z must be > 0");
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidParameter, "gamma must be > 0");
  if (!(coupling >= 0.0)) throw Error(ErrorCode::InvalidParameter, "K must be >= 0");
  ModelBundle b;
  b.name = "decay_model";
  CMatrix h = CMatrix::Zero(4, 4);
  h(kA, kB) = h(kB, kA) = omega1;
  h(kB, kC) = h(kC, kB) = 1.0 / tau_z;
  h(kC, kC) = Complex(0.0, -2.0 / (tau_z * tau_z * gamma));
  // omega_b sits on the |b> diagonal; only its existence is stated, not its placement.
  h(kB, kB) = omega_b;
  b.h = h;
  b.payload = ContinuousPayload{cm_flip(), coupling};
  b.parameters = {{"omega1", omega1}, {"tau_z", tau_z}, {"gamma", gamma}, {"K", coupling}, {"omega_b", omega_b}};
  b.non_hermitian = true;
  b.interpreted = omega_b != 0.0;
  b.protected_subspace = find_sector(b.zeno_resolution(), diag_projector(4, {kA, kB}));
  return b;
}

const std::vector<ModelInfo>& catalog() {
  static const std::vector<ModelInfo> models = {
      {"three_level_projective", "3-level system under repeated nonselective measurement of {P_1, P_2}",
       {{"omega1", 1.0}, {"omega2", 1.0}}},
      {"four_level_kicked", "3-level system plus |M>, kicked by exp(-i lambda2 (|c><M| + |M><c|))",
       {{"omega1", 1.0}, {"omega2", 1.0}, {"lambda1", 0.0}, {"lambda2", 1.0}}},
      {"four_level_continuous", "3-level system plus |M>, continuously coupled by K (|c><M| + |M><c|)",
       {{"omega1", 1.0}, {"omega2", 1.0}, {"K", 1.0}}},
      {"simplified_kicked", "3-level system kicked by exp(-i lambda1) P_1 + exp(-i lambda2) P_2",
       {{"omega1", 1.0}, {"omega2", 1.0}, {"lambda1", 0.0}, {"lambda2", 1.0}}},
      {"simplified_continuous", "3-level system coupled by K (eta1 P_1 + eta2 P_2)",
       {{"omega1", 1.0}, {"omega2", 1.0}, {"eta1", 0.0}, {"eta2", 1.0}, {"K", 1.0}}},
      {"decay_model", "|b> decays into a lossy continuum level resonantly coupled to |M> (non-Hermitian)",
       {{"omega1", 1.0}, {"tau_z", 1.0}, {"gamma", 0.1}, {"K", 0.0}, {"omega_b", 0.0}}},
  };
  return models;
}

ModelBundle make(const std::string& name, const std::map<std::string, double>& params) {
  const ModelInfo* info = nullptr;
  for (const auto& m : catalog()) {
    if (m.name == name) info = &m;
  }
  if (info == nullptr) throw Error(ErrorCode::SchemaViolation, "model.name: unknown model '" + name + "'");
  std::map<std::string, double> values;
  for (const auto& [key, def] : info->parameters) values[key] = def;
  for (const auto& [key, value] : params) {
    if (!values.contains(key)) {
      throw Error(ErrorCode::SchemaViolation, "model.parameters." + key + ": not a parameter of " + name);
    }
    values[key] = value;
  }
  auto v = [&](const char* key) { return values.at(key); };
  if (name == "three_level_projective") return three_level_projective(v("omega1"), v("omega2"));
  if (name == "four_level_kicked") return four_level_kicked(v("omega1"), v("omega2"), v("lambda1"), v("lambda2"));
  if (name == "four_level_continuous") return four_level_continuous(v("omega1"), v("omega2"), v("K"));
  if (name == "simplified_kicked") return simplified_kicked(v("omega1"), v("omega2"), v("lambda1"), v("lambda2"));
  if (name == "simplified_continuous") {
    return simplified_continuous(v("omega1"), v("omega2"), v("eta1"), v("eta2"), v("K"));
  }
  return decay_model(v("omega1"), v("tau_z"), v("gamma"), v("K"), v("omega_b"));
}

}  // namespace zeno::models
