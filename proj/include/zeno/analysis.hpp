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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/engines.hpp"
#include "zeno/models.hpp"
#include "zeno/spectral.hpp"
#include "zeno/states.hpp"

namespace zeno::analysis {

/// p_n = Tr[rho P_n].
std::vector<double> subspace_probabilities(const DensityMatrix& rho, const Resolution& res);
/// p_n = <psi|P_n|psi>; sums to 1 - leakage.
std::vector<double> subspace_probabilities(const StateVector& psi, const Resolution& res);

double purity(const DensityMatrix& rho);

/// Frobenius norm of P_n rho P_m, n != m.
double coherence_block_norm(const DensityMatrix& rho, const Resolution& res, std::size_t n, std::size_t m);

struct ObservableSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> probabilities;  // [sample][sector]
  std::vector<double> purity;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> coherence;  // n < m
  std::vector<double> leakage;
};

/// Observables at every sample of a record. Vector records get purity 1 (pure states) and
/// coherence norms of |psi><psi|.
ObservableSeries observe(const EvolutionRecord& rec, const Resolution& res);

/// Probability that every one of N equally spaced measurements of `projector` finds the system
/// inside its range: Tr[(P U_{t/N})^N rho0 (U_{t/N}^H P)^N].
double survival_probability(const DensityMatrix& rho0, const CMatrix& h, const CMatrix& projector, double t,
                            long n_steps);

struct ConvergenceCurve {
  std::string parameter_name;  // "N" or "K"
  std::vector<double> parameter_values;
  std::vector<double> distances;
  std::optional<double> fitted_rate;  // empty when exact or not fittable
  bool exact = false;                 // every distance <= 1e-10

  /// d(x_k) / d(x_{k+1}) for consecutive points.
  std::vector<double> successive_ratios() const;
};

/// Least-squares slope of log(distance) against log(parameter), discarding the
/// two smallest parameter values while at least two points remain.
std::optional<double> fit_log_log_slope(const std::vector<double>& parameters, const std::vector<double>& distances);

/// Operator-norm distance of the extracted limit (kicked: N, continuous: K) to exp(-i H_Z t).
ConvergenceCurve convergence_curve(const models::ModelBundle& bundle, double t,
                                   const std::vector<double>& parameter_values);

/// Frobenius distance between the finite-N projective final state and the Zeno-limit state.
ConvergenceCurve projective_convergence_curve(const models::ModelBundle& bundle, const DensityMatrix& rho0, double t,
                                              const std::vector<long>& n_values);

struct DecaySweep {
  std::vector<std::pair<double, double>> points;  // (K, survival of |b>)
  std::optional<double> protecting_coupling;      // smallest K with survival >= 0.9
};

/// Survival |<b|psi(t)>|^2 of psi(0) = |b> under the decay model, per coupling K.
DecaySweep decay_protection_sweep(double omega1, double tau_z, double gamma, double omega_b,
                                  const std::vector<double>& k_values, double t);

}  // namespace zeno::analysis
