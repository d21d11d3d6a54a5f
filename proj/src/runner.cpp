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

#include "zeno/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "zeno/analysis.hpp"
#include "zeno/models.hpp"
#include "zeno/output.hpp"

namespace zeno::cli {
namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

models::ModelBundle bundle_for(const ScenarioConfig& cfg, std::optional<double> coupling = std::nullopt) {
  auto params = cfg.parameters;
  if (coupling) params["K"] = *coupling;
  return models::make(cfg.model, params);
}

CVector initial_amplitudes(const ScenarioConfig& cfg, Eigen::Index dim) {
  CVector psi = CVector::Zero(dim);
  if (cfg.initial.kind == InitialState::Kind::Basis) {
    psi(cfg.initial.basis_index) = 1.0;
  } else {
    for (Eigen::Index k = 0; k < dim; ++k) psi(k) = cfg.initial.amplitudes.at(static_cast<std::size_t>(k));
  }
  return psi;
}

DensityMatrix initial_density(const ScenarioConfig& cfg, Eigen::Index dim) {
  if (cfg.initial.kind == InitialState::Kind::MaximallyMixed) return DensityMatrix::maximally_mixed(dim);
  return DensityMatrix::pure(StateVector::unit(initial_amplitudes(cfg, dim)));
}

class SeriesWriter {
 public:
  SeriesWriter(const ScenarioConfig& cfg, const Resolution& res, bool leakage)
      : cfg_(cfg), res_(res), leakage_(leakage) {}

  std::string render(const EvolutionRecord& rec) const {
    std::vector<std::string> header{"t"};
    const std::size_t n = res_.size();
    if (cfg_.wants(OutputKind::Probabilities)) {
      for (std::size_t k = 0; k < n; ++k) header.push_back("p_" + std::to_string(k + 1));
      if (leakage_) header.push_back("leakage");
    }
    if (cfg_.wants(OutputKind::Purity)) header.push_back("purity");
    if (cfg_.wants(OutputKind::Coherence)) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          header.push_back("coh_" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
        }
      }
    }
    CsvTable table(header);
    const auto obs = analysis::observe(rec, res_);
    for (std::size_t k = 0; k < obs.times.size(); ++k) {
      double total = obs.leakage[k];
      for (double p : obs.probabilities[k]) total += p;
      if (!(std::abs(total - 1.0) <= 1e-10)) {
        throw Error(ErrorCode::InvalidState, "probability sum rule violated at t = " + format_double(obs.times[k]));
      }
      std::vector<double> row{obs.times[k]};
      if (cfg_.wants(OutputKind::Probabilities)) {
        row.insert(row.end(), obs.probabilities[k].begin(), obs.probabilities[k].end());
        if (leakage_) row.push_back(obs.leakage[k]);
      }
      if (cfg_.wants(OutputKind::Purity)) row.push_back(obs.purity[k]);
      if (cfg_.wants(OutputKind::Coherence)) {
        for (const auto& [key, value] : obs.coherence[k]) row.push_back(value);
      }
      table.add_row(row);
    }
    return table.str();
  }

 private:
  const ScenarioConfig& cfg_;
  const Resolution& res_;
  bool leakage_;
};

std::string curve_csv(const analysis::ConvergenceCurve& curve) {
  CsvTable table({curve.parameter_name, "distance"});
  for (std::size_t k = 0; k < curve.distances.size(); ++k) {
    table.add_row({curve.parameter_values[k], curve.distances[k]});
  }
  return table.str();
}

std::string curve_note(const analysis::ConvergenceCurve& curve) {
  if (curve.exact) return "convergence: exact (all distances <= 1e-10)";
  if (!curve.fitted_rate) return "convergence: rate not fittable";
  return "convergence: fitted log-log rate " + format_double(*curve.fitted_rate);
}

bool wants_series(const ScenarioConfig& cfg) {
  return cfg.wants(OutputKind::Probabilities) || cfg.wants(OutputKind::Purity) || cfg.wants(OutputKind::Coherence);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaViolation: return kExitSchema;
    case ErrorCode::IoError: return kExitIo;
    default: return kExitNumeric;
  }
}

RenderedScenario render_scenario(const ScenarioConfig& cfg) {
  RenderedScenario out;
  const double t = cfg.schedule.t;
  const auto& sch = cfg.schedule;

  switch (cfg.mechanism) {
    case ScenarioMechanism::Projective: {
      const auto bundle = bundle_for(cfg);
      const auto& res = bundle.resolution();
      const DensityMatrix rho0 = initial_density(cfg, bundle.dim());
      if (wants_series(cfg)) {
        SeriesWriter writer(cfg, res, false);
        for (long n : sch.n_values) {
          const auto rec = engines::evolve_projective(rho0, bundle.h, res, t, n, sch.samples, sch.spacing);
          out.files.emplace_back("series_N" + std::to_string(n) + ".csv", writer.render(rec));
        }
      }
      if (cfg.wants(OutputKind::Convergence)) {
        const auto curve = analysis::projective_convergence_curve(bundle, rho0, t, sch.n_values);
        out.files.emplace_back("convergence.csv", curve_csv(curve));
        out.notes.push_back(curve_note(curve));
      }
      break;
    }
    case ScenarioMechanism::Kicked: {
      const auto bundle = bundle_for(cfg);
      const auto res = bundle.zeno_resolution();
      const DensityMatrix rho0 = initial_density(cfg, bundle.dim());
      if (wants_series(cfg)) {
        SeriesWriter writer(cfg, res, false);
        for (long n : sch.n_values) {
          const auto rec = engines::evolve_kicked(rho0, bundle.h, bundle.u_kick(), t, n, sch.samples, sch.spacing);
          out.files.emplace_back("series_N" + std::to_string(n) + ".csv", writer.render(rec));
        }
      }
      if (cfg.wants(OutputKind::Convergence)) {
        const std::vector<double> values(sch.n_values.begin(), sch.n_values.end());
        const auto curve = analysis::convergence_curve(bundle, t, values);
        out.files.emplace_back("convergence.csv", curve_csv(curve));
        out.notes.push_back(curve_note(curve));
      }
      if (cfg.wants(OutputKind::Propagator)) {
        for (long n : sch.n_values) {
          out.files.emplace_back("propagator_N" + std::to_string(n) + ".txt",
                                 matrix_dump(engines::kicked_propagator(bundle.h, bundle.u_kick(), t, n)));
        }
      }
      break;
    }
    case ScenarioMechanism::Continuous: {
      const auto probe = bundle_for(cfg, sch.k_values.front());
      const auto res = probe.zeno_resolution();
      if (wants_series(cfg)) {
        SeriesWriter writer(cfg, res, probe.non_hermitian);
        for (double k : sch.k_values) {
          const auto bundle = bundle_for(cfg, k);
          engines::ContinuousOptions opt;
          opt.samples = sch.samples;
          opt.spacing = sch.spacing;
          EvolutionRecord rec;
          if (bundle.non_hermitian) {
            opt.allow_non_hermitian = true;
            const StateVector psi0 = StateVector::unit(initial_amplitudes(cfg, bundle.dim()));
            rec = engines::evolve_continuous(psi0, bundle.h, bundle.h_c(), k, t, opt);
          } else {
            rec = engines::evolve_continuous(initial_density(cfg, bundle.dim()), bundle.h, bundle.h_c(), k, t, opt);
          }
          out.files.emplace_back("series_K" + short_number(k) + ".csv", writer.render(rec));
        }
      }
      if (cfg.wants(OutputKind::Convergence)) {
        const auto curve = analysis::convergence_curve(probe, t, sch.k_values);
        out.files.emplace_back("convergence.csv", curve_csv(curve));
        out.notes.push_back(curve_note(curve));
      }
      if (cfg.wants(OutputKind::Propagator)) {
        for (double k : sch.k_values) {
          out.files.emplace_back("propagator_K" + short_number(k) + ".txt",
                                 matrix_dump(engines::continuous_propagator(probe.h, probe.h_c(), k, t)));
        }
      }
      break;
    }
    case ScenarioMechanism::ZenoLimit: {
      const auto bundle = bundle_for(cfg);
      const auto res = bundle.zeno_resolution();
      if (wants_series(cfg)) {
        const auto rec =
            engines::evolve_zeno_limit(initial_density(cfg, bundle.dim()), bundle.h, res, t, sch.samples, sch.spacing);
        out.files.emplace_back("series.csv", SeriesWriter(cfg, res, false).render(rec));
      }
      if (cfg.wants(OutputKind::Propagator)) {
        out.files.emplace_back("propagator_zeno.txt", matrix_dump(engines::zeno_propagator(bundle.h, res, t)));
      }
      break;
    }
    case ScenarioMechanism::DecaySweep: {
      const auto p = bundle_for(cfg, 0.0).parameters;
      const auto sweep =
          analysis::decay_protection_sweep(p.at("omega1"), p.at("tau_z"), p.at("gamma"), p.at("omega_b"), sch.k_values, t);
      CsvTable table({"K", "survival"});
      for (const auto& [k, s] : sweep.points) table.add_row({k, s});
      out.files.emplace_back("decay_sweep.csv", table.str());
      out.notes.push_back(sweep.protecting_coupling
                              ? "decay: survival >= 0.9 first reached at K = " + format_double(*sweep.protecting_coupling)
                              : "decay: survival >= 0.9 not reached on this grid");
      break;
    }
  }
  return out;
}

std::vector<std::string> run_scenario(const ScenarioConfig& cfg, const RunOptions& opt, std::ostream& log) {
  const RenderedScenario rendered = render_scenario(cfg);
  const std::filesystem::path dir = opt.output_dir.value_or(cfg.output_path);
  std::vector<std::string> written;
  for (const auto& [name, content] : rendered.files) {
    const std::string path = (dir / name).string();
    write_file(path, content);
    written.push_back(path);
  }
  if (!opt.quiet) {
    for (const auto& path : written) log << "wrote " << path << '\n';
    for (const auto& note : rendered.notes) log << note << '\n';
  }
  return written;
}

}  // namespace zeno::cli
