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

#include "zeno/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <json.hpp>

#include "zeno/models.hpp"

namespace zeno::cli {
namespace {

using json = nlohmann::json;

struct NamedMechanism {
  std::string_view name;
  ScenarioMechanism value;
};
constexpr NamedMechanism kMechanisms[] = {
    {"projective", ScenarioMechanism::Projective}, {"kicked", ScenarioMechanism::Kicked},
    {"continuous", ScenarioMechanism::Continuous}, {"zeno-limit", ScenarioMechanism::ZenoLimit},
    {"decay-sweep", ScenarioMechanism::DecaySweep},
};

struct NamedOutput {
  std::string_view name;
  OutputKind value;
};
constexpr NamedOutput kOutputs[] = {
    {"probabilities", OutputKind::Probabilities}, {"purity", OutputKind::Purity},
    {"coherence", OutputKind::Coherence},         {"convergence", OutputKind::Convergence},
    {"propagator", OutputKind::Propagator},       {"survival", OutputKind::Survival},
};

std::string join_issues(const std::vector<SchemaIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "; ";
    out += (i.path.empty() ? std::string("<root>") : i.path) + ": " + i.reason;
  }
  return out;
}

class Checker {
 public:
  void fail(std::string path, std::string reason) { issues_.push_back({std::move(path), std::move(reason)}); }
  bool ok() const { return issues_.empty(); }
  std::vector<SchemaIssue> take() { return std::move(issues_); }

  /// Flags keys not in `allowed`. Returns false if `node` is not an object.
  bool object_with(const json& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!node.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : node.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(path.empty() ? key : path + "." + key, "unknown key");
      }
    }
    return true;
  }

  std::optional<double> number(const json& node, const std::string& path) {
    if (!node.is_number() || !std::isfinite(node.get<double>())) {
      fail(path, "expected a finite number");
      return std::nullopt;
    }
    return node.get<double>();
  }

 private:
  std::vector<SchemaIssue> issues_;
};

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw SchemaError({{"--set " + assignment, "expected key=value"}});
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string segment = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (segment.empty()) throw SchemaError({{key, "empty path segment in --set"}});
    if (!node->is_object() && !node->is_null()) throw SchemaError({{key, "--set path crosses a non-object"}});
    if (dot == std::string::npos) {
      (*node)[segment] = value;
      return;
    }
    node = &(*node)[segment];
    start = dot + 1;
  }
}

bool mechanism_accepts(ScenarioMechanism m, const models::ModelBundle& b) {
  switch (m) {
    case ScenarioMechanism::Projective: return b.mechanism() == Mechanism::Projective;
    case ScenarioMechanism::Kicked: return b.mechanism() == Mechanism::Kicked;
    case ScenarioMechanism::Continuous: return b.mechanism() == Mechanism::Continuous;
    case ScenarioMechanism::ZenoLimit: return !b.non_hermitian;
    case ScenarioMechanism::DecaySweep: return b.name == "decay_model";
  }
  return false;
}

std::set<OutputKind> outputs_for(ScenarioMechanism m, bool non_hermitian) {
  using O = OutputKind;
  switch (m) {
    case ScenarioMechanism::Projective: return {O::Probabilities, O::Purity, O::Coherence, O::Convergence};
    case ScenarioMechanism::Kicked:
      return {O::Probabilities, O::Purity, O::Coherence, O::Convergence, O::Propagator};
    case ScenarioMechanism::Continuous:
      if (non_hermitian) return {O::Probabilities, O::Coherence};
      return {O::Probabilities, O::Purity, O::Coherence, O::Convergence, O::Propagator};
    case ScenarioMechanism::ZenoLimit: return {O::Probabilities, O::Purity, O::Coherence, O::Propagator};
    case ScenarioMechanism::DecaySweep: return {O::Survival};
  }
  return {};
}

}  // namespace

std::string_view to_string(ScenarioMechanism m) {
  for (const auto& e : kMechanisms) {
    if (e.value == m) return e.name;
  }
  return "unknown";
}

std::string_view to_string(OutputKind k) {
  for (const auto& e : kOutputs) {
    if (e.value == k) return e.name;
  }
  return "unknown";
}

bool ScenarioConfig::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

SchemaError::SchemaError(std::vector<SchemaIssue> issues)
    : Error(ErrorCode::SchemaViolation, join_issues(issues)), issues_(std::move(issues)) {}

ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) throw SchemaError({SchemaIssue{"", "document is not valid JSON"}});
  for (const auto& o : overrides) apply_override(doc, o);

  Checker c;
  ScenarioConfig cfg;
  if (!c.object_with(doc, "", {"model", "mechanism", "schedule", "initial_state", "outputs", "output"})) {
    throw SchemaError(c.take());
  }

  // model
  std::optional<models::ModelBundle> bundle;
  if (!doc.contains("model")) {
    c.fail("model", "required");
  } else if (c.object_with(doc["model"], "model", {"name", "parameters"})) {
    const json& m = doc["model"];
    if (!m.contains("name") || !m["name"].is_string()) {
      c.fail("model.name", "required string");
    } else {
      cfg.model = m["name"].get<std::string>();
    }
    // Parameter names are checked against the model catalog below.
    if (m.contains("parameters")) {
      if (!m["parameters"].is_object()) {
        c.fail("model.parameters", "expected an object");
      } else {
        for (const auto& [key, value] : m["parameters"].items()) {
          if (auto v = c.number(value, "model.parameters." + key)) cfg.parameters[key] = *v;
        }
      }
    }
  }

  // mechanism
  bool have_mechanism = false;
  if (!doc.contains("mechanism") || !doc["mechanism"].is_string()) {
    c.fail("mechanism", "required string");
  } else {
    const auto name = doc["mechanism"].get<std::string>();
    for (const auto& e : kMechanisms) {
      if (e.name == name) {
        cfg.mechanism = e.value;
        have_mechanism = true;
      }
    }
    if (!have_mechanism) c.fail("mechanism", "unknown mechanism '" + name + "'");
  }

  const bool uses_k = cfg.mechanism == ScenarioMechanism::Continuous || cfg.mechanism == ScenarioMechanism::DecaySweep;
  const bool uses_n = cfg.mechanism == ScenarioMechanism::Projective || cfg.mechanism == ScenarioMechanism::Kicked;
  if (have_mechanism && uses_k && cfg.parameters.contains("K")) {
    c.fail("model.parameters.K", "set through schedule.K for mechanism " + std::string(to_string(cfg.mechanism)));
  }

  if (!cfg.model.empty()) {
    try {
      bundle = models::make(cfg.model, cfg.parameters);
    } catch (const Error& e) {
      std::string what = e.what();
      if (e.code() == ErrorCode::SchemaViolation) {
        // "SchemaViolation: <path>: <reason>"
        what = what.substr(what.find(": ") + 2);
        const auto sep = what.find(": ");
        c.fail(what.substr(0, sep), what.substr(sep + 2));
      } else {
        c.fail("model.parameters", what);
      }
    }
  }
  if (bundle && have_mechanism && !mechanism_accepts(cfg.mechanism, *bundle)) {
    c.fail("mechanism", "mechanism " + std::string(to_string(cfg.mechanism)) + " does not match the payload of model " +
                            bundle->name);
  }

  // schedule
  if (!doc.contains("schedule")) {
    c.fail("schedule", "required");
  } else if (c.object_with(doc["schedule"], "schedule", {"t", "N", "K", "samples", "spacing"})) {
    const json& s = doc["schedule"];
    if (!s.contains("t")) {
      c.fail("schedule.t", "required");
    } else if (auto t = c.number(s["t"], "schedule.t")) {
      if (*t <= 0.0) c.fail("schedule.t", "must be > 0");
      cfg.schedule.t = *t;
    }
    if (s.contains("N")) {
      if (have_mechanism && !uses_n) c.fail("schedule.N", "not used by this mechanism");
      if (!s["N"].is_array() || s["N"].empty()) {
        c.fail("schedule.N", "expected a non-empty array of positive integers");
      } else {
        for (std::size_t k = 0; k < s["N"].size(); ++k) {
          const json& v = s["N"][k];
          const std::string path = "schedule.N[" + std::to_string(k) + "]";
          if (!v.is_number_integer() || v.get<long>() < 1) {
            c.fail(path, "expected a positive integer");
            continue;
          }
          if (!cfg.schedule.n_values.empty() && v.get<long>() <= cfg.schedule.n_values.back()) {
            c.fail(path, "values must strictly increase");
          }
          cfg.schedule.n_values.push_back(v.get<long>());
        }
      }
    } else if (have_mechanism && uses_n) {
      c.fail("schedule.N", "required for mechanism " + std::string(to_string(cfg.mechanism)));
    }
    if (s.contains("K")) {
      if (have_mechanism && !uses_k) c.fail("schedule.K", "not used by this mechanism");
      if (!s["K"].is_array() || s["K"].empty()) {
        c.fail("schedule.K", "expected a non-empty array of non-negative numbers");
      } else {
        for (std::size_t k = 0; k < s["K"].size(); ++k) {
          const std::string path = "schedule.K[" + std::to_string(k) + "]";
          auto v = c.number(s["K"][k], path);
          if (!v) continue;
          if (*v < 0.0) c.fail(path, "must be >= 0");
          if (!cfg.schedule.k_values.empty() && *v <= cfg.schedule.k_values.back()) {
            c.fail(path, "values must strictly increase");
          }
          cfg.schedule.k_values.push_back(*v);
        }
      }
    } else if (have_mechanism && uses_k) {
      c.fail("schedule.K", "required for mechanism " + std::string(to_string(cfg.mechanism)));
    }
    if (s.contains("samples")) {
      if (!s["samples"].is_number_integer() || s["samples"].get<long>() < 1) {
        c.fail("schedule.samples", "expected a positive integer");
      } else {
        cfg.schedule.samples = s["samples"].get<long>();
      }
    }
    if (s.contains("spacing")) {
      const std::string sp = s["spacing"].is_string() ? s["spacing"].get<std::string>() : "";
      if (sp == "linear") {
        cfg.schedule.spacing = Spacing::Linear;
      } else if (sp == "geometric") {
        cfg.schedule.spacing = Spacing::Geometric;
      } else {
        c.fail("schedule.spacing", "expected \"linear\" or \"geometric\"");
      }
    }
  }

  // initial_state
  if (doc.contains("initial_state") &&
      c.object_with(doc["initial_state"], "initial_state", {"basis", "amplitudes", "maximally_mixed"})) {
    const json& st = doc["initial_state"];
    if (st.size() != 1) {
      c.fail("initial_state", "give exactly one of basis, amplitudes, maximally_mixed");
    } else if (st.contains("basis")) {
      if (!st["basis"].is_number_integer()) {
        c.fail("initial_state.basis", "expected an integer");
      } else {
        cfg.initial.kind = InitialState::Kind::Basis;
        cfg.initial.basis_index = st["basis"].get<long>();
        if (bundle && (cfg.initial.basis_index < 0 || cfg.initial.basis_index >= bundle->dim())) {
          c.fail("initial_state.basis", "index outside [0, " + std::to_string(bundle->dim()) + ")");
        }
      }
    } else if (st.contains("amplitudes")) {
      cfg.initial.kind = InitialState::Kind::Amplitudes;
      const json& a = st["amplitudes"];
      bool good = a.is_array();
      for (std::size_t k = 0; good && k < a.size(); ++k) {
        good = a[k].is_array() && a[k].size() == 2 && a[k][0].is_number() && a[k][1].is_number();
        if (good) cfg.initial.amplitudes.emplace_back(a[k][0].get<double>(), a[k][1].get<double>());
      }
      if (!good) {
        c.fail("initial_state.amplitudes", "expected an array of [re, im] pairs");
      } else {
        double norm2 = 0.0;
        for (const auto& z : cfg.initial.amplitudes) norm2 += std::norm(z);
        if (std::abs(std::sqrt(norm2) - 1.0) > kTolerances.state_norm) {
          c.fail("initial_state.amplitudes", "state is not normalized");
        }
        if (bundle && static_cast<Eigen::Index>(cfg.initial.amplitudes.size()) != bundle->dim()) {
          c.fail("initial_state.amplitudes", "expected " + std::to_string(bundle->dim()) + " amplitudes");
        }
      }
    } else if (st["maximally_mixed"] != true) {
      c.fail("initial_state.maximally_mixed", "expected true");
    } else {
      cfg.initial.kind = InitialState::Kind::MaximallyMixed;
      if (bundle && bundle->non_hermitian) {
        c.fail("initial_state.maximally_mixed", "the decay model evolves state vectors only");
      }
    }
  }

  // outputs
  if (!doc.contains("outputs") || !doc["outputs"].is_array() || doc["outputs"].empty()) {
    c.fail("outputs", "expected a non-empty array");
  } else {
    const auto allowed = outputs_for(cfg.mechanism, bundle && bundle->non_hermitian);
    for (std::size_t k = 0; k < doc["outputs"].size(); ++k) {
      const json& o = doc["outputs"][k];
      const std::string path = "outputs[" + std::to_string(k) + "]";
      std::optional<OutputKind> kind;
      if (o.is_string()) {
        for (const auto& e : kOutputs) {
          if (e.name == o.get<std::string>()) kind = e.value;
        }
      }
      if (!kind) {
        c.fail(path, "unknown output");
        continue;
      }
      if (have_mechanism && !allowed.contains(*kind)) {
        c.fail(path, std::string(to_string(*kind)) + " is not available for mechanism " +
                         std::string(to_string(cfg.mechanism)));
      }
      if (!cfg.wants(*kind)) cfg.outputs.push_back(*kind);
    }
    if (cfg.wants(OutputKind::Convergence)) {
      const std::size_t count = uses_n ? cfg.schedule.n_values.size() : cfg.schedule.k_values.size();
      if (count < 3) c.fail("outputs", "convergence needs at least 3 schedule values");
    }
  }

  // output
  if (doc.contains("output") && c.object_with(doc["output"], "output", {"path", "format"})) {
    const json& o = doc["output"];
    if (o.contains("path")) {
      if (!o["path"].is_string() || o["path"].get<std::string>().empty()) {
        c.fail("output.path", "expected a non-empty string");
      } else {
        cfg.output_path = o["path"].get<std::string>();
      }
    }
    if (o.contains("format")) {
      if (o["format"] != "csv") c.fail("output.format", "only \"csv\" is supported");
    }
  }

  if (!c.ok()) throw SchemaError(c.take());
  return cfg;
}

}  // namespace zeno::cli
