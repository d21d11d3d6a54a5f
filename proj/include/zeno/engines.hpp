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

// Finite-parameter evolution engines (projective, kicked, continuous), the exact Zeno-limit
// engine, and the extracted-limit propagators whose distance to exp(-i H_Z t) measures
// convergence.
//
// Ordering convention: products are written as in the physics literature, rightmost factor
// acts first, so one kicked step is U_kick * U(t/N).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "zeno/linalg.hpp"
#include "zeno/spectral.hpp"
#include "zeno/states.hpp"

namespace zeno {

enum class Mechanism { Projective, Kicked, Continuous, ZenoLimit };

constexpr std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Projective: return "projective";
    case Mechanism::Kicked: return "kicked";
    case Mechanism::Continuous: return "continuous";
    case Mechanism::ZenoLimit: return "zeno-limit";
  }
  return "unknown";
}

enum class Spacing { Linear, Geometric };
enum class Axis { Time, Step };

struct TraceCorrection {
  long step;
  double drift;  // trace - 1 before the correction
};

template <typename Real>
struct BasicEvolutionRecord {
  using Densities = std::vector<BasicDensityMatrix<Real>>;
  using Vectors = std::vector<BasicStateVector<Real>>;

  Mechanism mechanism = Mechanism::Projective;
  Axis axis = Axis::Time;
  std::vector<Real> axis_values;  // times, or step counts for the kicked engine
  std::variant<Densities, Vectors> states;

  // What produced the record.
  Real t = 0;
  long steps = 0;      // N for projective/kicked
  Real coupling = 0;   // K for continuous

  std::vector<TraceCorrection> corrections;

  std::size_t size() const { return axis_values.size(); }
  bool holds_vectors() const { return std::holds_alternative<Vectors>(states); }
  const Densities& densities() const { return std::get<Densities>(states); }
  const Vectors& vectors() const { return std::get<Vectors>(states); }

  /// Time of sample k, also for step-indexed records.
  Real time_at(std::size_t k) const {
    if (axis == Axis::Time) return axis_values.at(k);
    return t * axis_values.at(k) / Real(steps);
  }
};

using EvolutionRecord = BasicEvolutionRecord<double>;

namespace engines {

/// Step indices in [1, total] at which to record; always ends with `total`.
/// Geometric spacing uses round(total^(j/samples)).
inline std::vector<long> checkpoints(long total, long samples, Spacing spacing = Spacing::Linear) {
  std::vector<long> out;
  if (samples < 1) samples = 1;
  samples = std::min(samples, total);
  for (long j = 1; j <= samples; ++j) {
    long k = 0;
    if (spacing == Spacing::Linear) {
      k = (j * total) / samples;
    } else {
      k = std::lround(std::pow(double(total), double(j) / double(samples)));
    }
    k = std::clamp(k, 1L, total);
    if (out.empty() || k > out.back()) out.push_back(k);
  }
  if (out.back() != total) out.push_back(total);
  return out;
}

/// Sample times in (0, t]; always ends with t. Geometric spacing halves back from t.
template <typename Real>
std::vector<Real> sample_times(Real t, long samples, Spacing spacing = Spacing::Linear) {
  if (samples < 1) samples = 1;
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (long j = 1; j <= samples; ++j) {
    out.push_back(spacing == Spacing::Linear ? t * Real(j) / Real(samples)
                                             : t * std::ldexp(Real(1), static_cast<int>(j - samples)));
  }
  out.back() = t;
  return out;
}

/// a^n by repeated squaring.
template <typename Real>
ComplexMatrix<Real> matrix_power(const ComplexMatrix<Real>& a, long n) {
  if (n < 0) throw Error(ErrorCode::InvalidParameter, "matrix_power needs n >= 0");
  ComplexMatrix<Real> result = ComplexMatrix<Real>::Identity(a.rows(), a.cols());
  ComplexMatrix<Real> base = a;
  while (n > 0) {
    if (n & 1) result = (result * base).eval();
    n >>= 1;
    if (n > 0) base = (base * base).eval();
  }
  return result;
}

namespace detail {

inline void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidParameter, "t must be > 0");
}

inline void require_steps(long n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "N must be >= 1");
}

template <typename Real>
void require_unitary(const ComplexMatrix<Real>& u, const char* what) {
  linalg::require_square(u, what);
  if (!linalg::is_unitary(u)) throw Error(ErrorCode::NotUnitary, std::string(what) + " is not unitary");
}

inline void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dim " + std::to_string(got) + " vs " + std::to_string(want));
  }
}

template <typename Real>
BasicDensityMatrix<Real> conjugate(const ComplexMatrix<Real>& u, const BasicDensityMatrix<Real>& rho) {
  return BasicDensityMatrix<Real>::trusted(u * rho.matrix() * u.adjoint());
}

// Norm can only shrink (unitary or contractive generator); `slack` absorbs rounding above 1.
template <typename Real>
BasicStateVector<Real> apply(const ComplexMatrix<Real>& u, const BasicStateVector<Real>& psi, double slack = 1e-8) {
  return BasicStateVector<Real>(u * psi.amplitudes(), slack);
}

template <typename Real>
BasicDensityMatrix<Real> apply(const ComplexMatrix<Real>& u, const BasicDensityMatrix<Real>& rho, double = 0) {
  return conjugate(u, rho);
}

template <typename State>
Eigen::Index state_dim(const State& s) {
  return s.dim();
}

}  // namespace detail

/// rho_k = (P U_{t/N})^k P rho0. The record starts with the post-preparatory state at t = 0
/// and holds rho_k at the requested checkpoints, ending with rho_N.
template <typename Real>
BasicEvolutionRecord<Real> evolve_projective(const BasicDensityMatrix<Real>& rho0, const ComplexMatrix<Real>& h,
                                             const BasicResolution<Real>& res, Real t, long n_steps,
                                             long samples = 1, Spacing spacing = Spacing::Linear,
                                             const Tolerances& tol = kTolerances) {
  detail::require_positive_time(double(t));
  detail::require_steps(n_steps);
  linalg::require_square(h, "Hamiltonian");
  detail::require_dim(h.rows(), res.dim(), "Hamiltonian vs resolution");
  detail::require_dim(rho0.dim(), res.dim(), "state vs resolution");

  const ComplexMatrix<Real> u = linalg::propagator(h, t / Real(n_steps));
  const ComplexMatrix<Real> u_adj = u.adjoint();

  BasicEvolutionRecord<Real> rec;
  rec.mechanism = Mechanism::Projective;
  rec.axis = Axis::Time;
  rec.t = t;
  rec.steps = n_steps;
  typename BasicEvolutionRecord<Real>::Densities states;

  ComplexMatrix<Real> rho = spectral::pinch(rho0.matrix(), res);
  rec.axis_values.push_back(Real(0));
  states.push_back(BasicDensityMatrix<Real>::trusted(rho));

  const auto cps = checkpoints(n_steps, samples, spacing);
  std::size_t next = 0;
  ComplexMatrix<Real> tmp(res.dim(), res.dim());
  for (long k = 1; k <= n_steps; ++k) {
    tmp.noalias() = u * rho * u_adj;
    rho = spectral::pinch(tmp, res);
    if (k % tol.renorm_interval == 0) {
      const Real tr = rho.trace().real();
      if (std::abs(tr - Real(1)) > Real(tol.renorm_drift)) {
        rec.corrections.push_back({k, double(tr - Real(1))});
        rho /= tr;
      }
    }
    if (next < cps.size() && k == cps[next]) {
      rec.axis_values.push_back(t * Real(k) / Real(n_steps));
      states.push_back(BasicDensityMatrix<Real>::trusted(rho));
      ++next;
    }
  }
  rec.states = std::move(states);
  return rec;
}

/// U_N(t) = [U_kick U(t/N)]^N.
template <typename Real>
ComplexMatrix<Real> kicked_propagator(const ComplexMatrix<Real>& h, const ComplexMatrix<Real>& u_kick, Real t,
                                      long n_steps) {
  detail::require_positive_time(double(t));
  detail::require_steps(n_steps);
  detail::require_unitary(u_kick, "U_kick");
  detail::require_dim(h.rows(), u_kick.rows(), "Hamiltonian vs kick");
  const ComplexMatrix<Real> step = u_kick * linalg::propagator(h, t / Real(n_steps));
  return matrix_power(step, n_steps);
}

/// Applies [U_kick U(t/N)] N times; the axis counts steps.
template <typename Real, typename State>
BasicEvolutionRecord<Real> evolve_kicked(const State& state0, const ComplexMatrix<Real>& h,
                                         const ComplexMatrix<Real>& u_kick, Real t, long n_steps, long samples = 1,
                                         Spacing spacing = Spacing::Linear) {
  detail::require_positive_time(double(t));
  detail::require_steps(n_steps);
  detail::require_unitary(u_kick, "U_kick");
  linalg::require_square(h, "Hamiltonian");
  detail::require_dim(h.rows(), u_kick.rows(), "Hamiltonian vs kick");
  detail::require_dim(detail::state_dim(state0), h.rows(), "state vs Hamiltonian");

  const ComplexMatrix<Real> step = u_kick * linalg::propagator(h, t / Real(n_steps));

  BasicEvolutionRecord<Real> rec;
  rec.mechanism = Mechanism::Kicked;
  rec.axis = Axis::Step;
  rec.t = t;
  rec.steps = n_steps;
  std::vector<State> states;
  const auto cps = checkpoints(n_steps, samples, spacing);
  std::size_t next = 0;
  State s = state0;
  for (long k = 1; k <= n_steps; ++k) {
    s = detail::apply(step, s);
    if (next < cps.size() && k == cps[next]) {
      rec.axis_values.push_back(Real(k));
      states.push_back(s);
      ++next;
    }
  }
  rec.states = std::move(states);
  return rec;
}

struct ContinuousOptions {
  long samples = 1;
  Spacing spacing = Spacing::Linear;
  bool allow_non_hermitian = false;  // decay model; state vectors only
  double accuracy = kTolerances.expm_accuracy;
};

namespace detail {

template <typename Real>
ComplexMatrix<Real> coupled_propagator(const ComplexMatrix<Real>& h_k, Real tau, bool hermitian, double accuracy) {
  if (hermitian) return linalg::propagator(h_k, tau);
  const ComplexMatrix<Real> gen = std::complex<Real>(0, -tau) * h_k;
  return linalg::expm(gen, accuracy);
}

template <typename Real>
ComplexMatrix<Real> coupled_generator(const ComplexMatrix<Real>& h, const ComplexMatrix<Real>& h_c, Real k) {
  linalg::require_square(h, "Hamiltonian");
  linalg::require_square(h_c, "coupling Hamiltonian");
  detail::require_dim(h.rows(), h_c.rows(), "Hamiltonian vs coupling");
  if (!(k >= Real(0)) || !std::isfinite(double(k))) throw Error(ErrorCode::InvalidParameter, "K must be >= 0");
  return h + k * h_c;
}

}  // namespace detail

/// U_K(t) = exp(-i (H + K H_c) t), Hermitian generators only.
template <typename Real>
ComplexMatrix<Real> continuous_propagator(const ComplexMatrix<Real>& h, const ComplexMatrix<Real>& h_c, Real k,
                                          Real t) {
  const ComplexMatrix<Real> h_k = detail::coupled_generator(h, h_c, k);
  return linalg::propagator(h_k, t);
}

/// exp(-i (H + K H_c) tau) applied at sampled tau in (0, t].
template <typename Real, typename State>
BasicEvolutionRecord<Real> evolve_continuous(const State& state0, const ComplexMatrix<Real>& h,
                                             const ComplexMatrix<Real>& h_c, Real k, Real t,
                                             const ContinuousOptions& opt = {}) {
  detail::require_positive_time(double(t));
  const ComplexMatrix<Real> h_k = detail::coupled_generator(h, h_c, k);
  detail::require_dim(detail::state_dim(state0), h.rows(), "state vs Hamiltonian");
  const bool hermitian = linalg::is_hermitian(h_k);
  constexpr bool density_input = std::is_same_v<State, BasicDensityMatrix<Real>>;
  if (!hermitian) {
    if constexpr (density_input) {
      throw Error(ErrorCode::NonHermitianDensityEvolution,
                  "density matrices cannot be evolved with a non-Hermitian generator");
    } else if (!opt.allow_non_hermitian) {
      throw Error(ErrorCode::NotHermitian, "H + K H_c is not Hermitian and the generator is not flagged");
    }
  }

  BasicEvolutionRecord<Real> rec;
  rec.mechanism = Mechanism::Continuous;
  rec.axis = Axis::Time;
  rec.t = t;
  rec.coupling = k;
  std::vector<State> states;
  // exp(-i H_K tau) is only accurate to about eps |H_K| tau when H_K is stiff.
  const double eps = std::numeric_limits<Real>::epsilon();
  for (Real tau : sample_times(t, opt.samples, opt.spacing)) {
    const ComplexMatrix<Real> u = detail::coupled_propagator(h_k, tau, hermitian, opt.accuracy);
    const double slack = std::max(1e-8, 64.0 * eps * double(h_k.norm() * tau));
    rec.axis_values.push_back(tau);
    states.push_back(detail::apply(u, state0, slack));
  }
  rec.states = std::move(states);
  return rec;
}

/// V_n(t) = P_n exp(-i P_n H P_n t), one per projector.
template <typename Real>
std::vector<ComplexMatrix<Real>> zeno_limit_propagators(const ComplexMatrix<Real>& h,
                                                        const BasicResolution<Real>& res, Real t) {
  linalg::require_square(h, "Hamiltonian");
  detail::require_dim(h.rows(), res.dim(), "Hamiltonian vs resolution");
  if (!linalg::is_hermitian(h)) throw Error(ErrorCode::NotHermitian, "Zeno limit needs a Hermitian H");
  std::vector<ComplexMatrix<Real>> out;
  out.reserve(res.size());
  for (const auto& p : res.projectors()) {
    const ComplexMatrix<Real> block = p * h * p;
    out.push_back(p * linalg::propagator(block, t));
  }
  return out;
}

/// exp(-i H_Z t) = sum_n V_n(t).
template <typename Real>
ComplexMatrix<Real> zeno_propagator(const ComplexMatrix<Real>& h, const BasicResolution<Real>& res, Real t) {
  return linalg::propagator(spectral::zeno_hamiltonian(h, res), t);
}

/// rho(tau) = sum_n V_n(tau) rho0 V_n(tau)^H at sampled tau in (0, t]; t = 0 yields pinch(rho0).
template <typename Real>
BasicEvolutionRecord<Real> evolve_zeno_limit(const BasicDensityMatrix<Real>& rho0, const ComplexMatrix<Real>& h,
                                             const BasicResolution<Real>& res, Real t, long samples = 1,
                                             Spacing spacing = Spacing::Linear) {
  detail::require_dim(rho0.dim(), res.dim(), "state vs resolution");
  if (!(t >= Real(0))) throw Error(ErrorCode::InvalidParameter, "t must be >= 0");

  BasicEvolutionRecord<Real> rec;
  rec.mechanism = Mechanism::ZenoLimit;
  rec.axis = Axis::Time;
  rec.t = t;
  typename BasicEvolutionRecord<Real>::Densities states;
  const std::vector<Real> times = t > Real(0) ? sample_times(t, samples, spacing) : std::vector<Real>{Real(0)};
  for (Real tau : times) {
    ComplexMatrix<Real> rho = ComplexMatrix<Real>::Zero(res.dim(), res.dim());
    for (const auto& v : zeno_limit_propagators(h, res, tau)) rho.noalias() += v * rho0.matrix() * v.adjoint();
    rec.axis_values.push_back(tau);
    states.push_back(BasicDensityMatrix<Real>::trusted(std::move(rho)));
  }
  rec.states = std::move(states);
  return rec;
}

/// V_N(t) = (U_kick^H)^N [U_kick U(t/N)]^N.
template <typename Real>
ComplexMatrix<Real> extracted_kick_limit(const ComplexMatrix<Real>& h, const ComplexMatrix<Real>& u_kick, Real t,
                                         long n_steps) {
  const ComplexMatrix<Real> u_n = kicked_propagator(h, u_kick, t, n_steps);
  const ComplexMatrix<Real> kick_adj = u_kick.adjoint();
  return matrix_power(kick_adj, n_steps) * u_n;
}

/// exp(i K H_c t) exp(-i (H + K H_c) t).
template <typename Real>
ComplexMatrix<Real> extracted_continuous_limit(const ComplexMatrix<Real>& h, const ComplexMatrix<Real>& h_c, Real t,
                                               Real k) {
  const ComplexMatrix<Real> u_k = continuous_propagator(h, h_c, k, t);
  return linalg::propagator(h_c, -k * t) * u_k;
}

}  // namespace engines
}  // namespace zeno
