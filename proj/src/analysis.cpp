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

#include "zeno/analysis.hpp"

#include <cmath>

namespace zeno::analysis {
namespace {

void require_matching(Eigen::Index dim, const Resolution& res) {
  if (dim != res.dim()) throw Error(ErrorCode::DimensionMismatch, "state and resolution dimensions differ");
}

void require_ascending(const std::vector<double>& values, std::size_t min_count) {
  if (values.size() < min_count) {
    throw Error(ErrorCode::InvalidParameter, "need at least " + std::to_string(min_count) + " parameter values");
  }
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] > values[k - 1])) throw Error(ErrorCode::InvalidParameter, "parameter values must ascend");
  }
}

ConvergenceCurve finish(ConvergenceCurve c) {
  c.exact = true;
  for (double d : c.distances) c.exact = c.exact && d <= 1e-10;
  if (!c.exact) c.fitted_rate = fit_log_log_slope(c.parameter_values, c.distances);
  return c;
}

}  // namespace

std::vector<double> subspace_probabilities(const DensityMatrix& rho, const Resolution& res) {
  require_matching(rho.dim(), res);
  std::vector<double> p;
  p.reserve(res.size());
  // Tr[rho P] = sum_ij rho_ij P_ji
  for (const auto& proj : res.projectors()) p.push_back((rho.matrix().cwiseProduct(proj.transpose())).sum().real());
  return p;
}

std::vector<double> subspace_probabilities(const StateVector& psi, const Resolution& res) {
  require_matching(psi.dim(), res);
  std::vector<double> p;
  p.reserve(res.size());
  for (const auto& proj : res.projectors()) {
    p.push_back(psi.amplitudes().dot(proj * psi.amplitudes()).real());
  }
  return p;
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double coherence_block_norm(const DensityMatrix& rho, const Resolution& res, std::size_t n, std::size_t m) {
  require_matching(rho.dim(), res);
  if (n >= res.size() || m >= res.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "sector index out of range");
  }
  if (n == m) throw Error(ErrorCode::IndexOutOfRange, "coherence block needs n != m");
  return (res.projector(n) * rho.matrix() * res.projector(m)).norm();
}

ObservableSeries observe(const EvolutionRecord& rec, const Resolution& res) {
  ObservableSeries s;
  const std::size_t sectors = res.size();
  for (std::size_t k = 0; k < rec.size(); ++k) {
    s.times.push_back(rec.time_at(k));
    std::vector<double> p;
    std::map<std::pair<std::size_t, std::size_t>, double> coh;
    double pur = 1.0;
    double leak = 0.0;
    if (rec.holds_vectors()) {
      const StateVector& psi = rec.vectors()[k];
      p = subspace_probabilities(psi, res);
      leak = psi.leakage();
      const CMatrix rho = psi.projector();
      for (std::size_t n = 0; n < sectors; ++n) {
        for (std::size_t m = n + 1; m < sectors; ++m) coh[{n, m}] = (res.projector(n) * rho * res.projector(m)).norm();
      }
      // |psi|^4, equals 1 for closed dynamics
      pur = rho.squaredNorm();
    } else {
      const DensityMatrix& rho = rec.densities()[k];
      p = subspace_probabilities(rho, res);
      pur = purity(rho);
      for (std::size_t n = 0; n < sectors; ++n) {
        for (std::size_t m = n + 1; m < sectors; ++m) coh[{n, m}] = coherence_block_norm(rho, res, n, m);
      }
    }
    s.probabilities.push_back(std::move(p));
    s.purity.push_back(pur);
    s.coherence.push_back(std::move(coh));
    s.leakage.push_back(leak);
  }
  return s;
}

double survival_probability(const DensityMatrix& rho0, const CMatrix& h, const CMatrix& projector, double t,
                            long n_steps) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidParameter, "t must be > 0");
  if (n_steps < 1) throw Error(ErrorCode::InvalidParameter, "N must be >= 1");
  linalg::require_same_dim(h, projector, "Hamiltonian vs projector");
  if (rho0.dim() != h.rows()) throw Error(ErrorCode::DimensionMismatch, "state vs Hamiltonian");
  const CMatrix step = projector * linalg::propagator(h, t / double(n_steps));
  const CMatrix evolved = engines::matrix_power(step, n_steps);
  return (evolved * rho0.matrix() * evolved.adjoint()).trace().real();
}

std::vector<double> ConvergenceCurve::successive_ratios() const {
  std::vector<double> r;
  for (std::size_t k = 1; k < distances.size(); ++k) r.push_back(distances[k - 1] / distances[k]);
  return r;
}

std::optional<double> fit_log_log_slope(const std::vector<double>& parameters, const std::vector<double>& distances) {
  if (parameters.size() != distances.size() || parameters.size() < 2) return std::nullopt;
  const std::size_t skip = std::min<std::size_t>(2, parameters.size() - 2);
  std::vector<double> xs, ys;
  for (std::size_t k = skip; k < parameters.size(); ++k) {
    if (!(parameters[k] > 0.0) || !(distances[k] > 0.0)) return std::nullopt;
    xs.push_back(std::log(parameters[k]));
    ys.push_back(std::log(distances[k]));
  }
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceCurve convergence_curve(const models::ModelBundle& bundle, double t,
                                   const std::vector<double>& parameter_values) {
  require_ascending(parameter_values, 3);
  const CMatrix target = linalg::propagator(bundle.zeno_hamiltonian(), t);
  ConvergenceCurve c;
  c.parameter_values = parameter_values;
  switch (bundle.mechanism()) {
    case Mechanism::Kicked:
      c.parameter_name = "N";
      for (double v : parameter_values) {
        const long n = std::lround(v);
        if (n < 1 || double(n) != v) throw Error(ErrorCode::InvalidParameter, "N values must be positive integers");
        const CMatrix vn = engines::extracted_kick_limit(bundle.h, bundle.u_kick(), t, n);
        c.distances.push_back(linalg::opnorm((vn - target).eval()));
      }
      break;
    case Mechanism::Continuous:
      c.parameter_name = "K";
      for (double k : parameter_values) {
        const CMatrix vk = engines::extracted_continuous_limit(bundle.h, bundle.h_c(), t, k);
        c.distances.push_back(linalg::opnorm((vk - target).eval()));
      }
      break;
    default:
      throw Error(ErrorCode::InvalidParameter, "convergence_curve needs a kicked or continuous model");
  }
  return finish(std::move(c));
}

ConvergenceCurve projective_convergence_curve(const models::ModelBundle& bundle, const DensityMatrix& rho0, double t,
                                              const std::vector<long>& n_values) {
  if (bundle.mechanism() != Mechanism::Projective) {
    throw Error(ErrorCode::InvalidParameter, "projective_convergence_curve needs a projective model");
  }
  std::vector<double> as_double(n_values.begin(), n_values.end());
  require_ascending(as_double, 3);
  const auto& res = bundle.resolution();
  const auto limit = engines::evolve_zeno_limit(rho0, bundle.h, res, t);
  const CMatrix& target = limit.densities().back().matrix();
  ConvergenceCurve c;
  c.parameter_name = "N";
  c.parameter_values = as_double;
  for (long n : n_values) {
    const auto rec = engines::evolve_projective(rho0, bundle.h, res, t, n);
    c.distances.push_back((rec.densities().back().matrix() - target).norm());
  }
  return finish(std::move(c));
}

DecaySweep decay_protection_sweep(double omega1, double tau_z, double gamma, double omega_b,
                                  const std::vector<double>& k_values, double t) {
  require_ascending(k_values, 1);
  DecaySweep sweep;
  const StateVector psi0 = StateVector::basis(4, models::kB);
  for (double k : k_values) {
    const auto bundle = models::decay_model(omega1, tau_z, gamma, k, omega_b);
    engines::ContinuousOptions opt;
    opt.allow_non_hermitian = true;
    const auto rec = engines::evolve_continuous(psi0, bundle.h, bundle.h_c(), bundle.coupling(), t, opt);
    const double survival = std::norm(rec.vectors().back().amplitudes()(models::kB));
    sweep.points.emplace_back(k, survival);
    if (!sweep.protecting_coupling && survival >= 0.9) sweep.protecting_coupling = k;
  }
  return sweep;
}

}  // namespace zeno::analysis
