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

// Concrete systems in dimensionless units (hbar = 1). Basis order is fixed as
// (a, b, c) for the three-level models and (a, b, c, M) for the four-level ones.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "zeno/engines.hpp"
#include "zeno/linalg.hpp"
#include "zeno/spectral.hpp"

namespace zeno::models {

enum Level : Eigen::Index { kA = 0, kB = 1, kC = 2, kM = 3 };

struct ProjectivePayload {
  Resolution res;
};
struct KickedPayload {
  CMatrix u_kick;
};
struct ContinuousPayload {
  CMatrix h_c;
  double coupling;  // K
};
using Payload = std::variant<KickedPayload, ProjectivePayload, ContinuousPayload>;

struct ModelBundle {
  std::string name;
  CMatrix h;
  Payload payload;
  std::map<std::string, double> parameters;
  int protected_subspace = 0;  // index of H_1 in zeno_resolution()
  bool non_hermitian = false;  // decay model only
  bool interpreted = false;    // contains an entry placed by interpretation (omega_b)

  Mechanism mechanism() const;
  Eigen::Index dim() const { return h.rows(); }

  const Resolution& resolution() const;
  const CMatrix& u_kick() const;
  const CMatrix& h_c() const;
  double coupling() const;

  /// The resolution whose sectors become the Zeno subspaces: the measurement projectors,
  /// the kick's spectral projections, or the eigenprojections of H_c.
  Resolution zeno_resolution() const;
  CMatrix zeno_hamiltonian() const;
};

ModelBundle three_level_projective(double omega1, double omega2);
ModelBundle four_level_kicked(double omega1, double omega2, double lambda1, double lambda2);
ModelBundle four_level_continuous(double omega1, double omega2, double coupling);
ModelBundle simplified_kicked(double omega1, double omega2, double lambda1, double lambda2);
ModelBundle simplified_continuous(double omega1, double omega2, double eta1, double eta2, double coupling);
ModelBundle decay_model(double omega1, double tau_z, double gamma, double coupling, double omega_b = 0.0);

/// The three-level Hamiltonian Omega1 (|a><b| + h.c.) + Omega2 (|b><c| + h.c.), padded with
/// zero rows up to `dim`.
CMatrix three_level_hamiltonian(double omega1, double omega2, Eigen::Index dim = 3);

/// Spontaneous decay in vacuum, SI units. Documentation only; the decay model is dimensionless.
namespace vacuum {
inline constexpr double decay_rate = 1e9;             // gamma, s^-1
inline constexpr double zeno_time_squared = 1e-29;    // tau_Z^2, s^2
inline constexpr double inverse_zeno_scale = 1e20;    // 1 / (tau_Z^2 gamma), s^-1
}  // namespace vacuum

struct ModelInfo {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, double>> parameters;  // name, default
};

const std::vector<ModelInfo>& catalog();

/// Builds a catalog model; missing parameters take their defaults, unknown ones throw
/// SchemaViolation.
ModelBundle make(const std::string& name, const std::map<std::string, double>& params);

}  // namespace zeno::models
