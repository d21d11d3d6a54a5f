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

// Scenario documents are JSON:
//
//   {
//     "model":     {"name": "three_level_projective", "parameters": {"omega1": 1, "omega2": 1}},
//     "mechanism": "projective",        // projective | kicked | continuous | zeno-limit | decay-sweep
//     "schedule":  {"t": 1.0, "N": [16, 32, 64], "samples": 8, "spacing": "linear"},
//     "initial_state": {"basis": 1},    // or {"amplitudes": [[re, im], ...]} or {"maximally_mixed": true}
//     "outputs":   ["probabilities", "purity"],
//     "output":    {"path": "results", "format": "csv"}
//   }
//
// Unknown keys anywhere are rejected.

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/engines.hpp"
#include "zeno/error.hpp"

namespace zeno::cli {

enum class ScenarioMechanism { Projective, Kicked, Continuous, ZenoLimit, DecaySweep };
enum class OutputKind { Probabilities, Purity, Coherence, Convergence, Propagator, Survival };

std::string_view to_string(ScenarioMechanism m);
std::string_view to_string(OutputKind k);

struct InitialState {
  enum class Kind { Basis, Amplitudes, MaximallyMixed };
  Kind kind = Kind::Basis;
  long basis_index = 0;
  std::vector<std::complex<double>> amplitudes;
};

struct Schedule {
  double t = 0.0;
  std::vector<long> n_values;
  std::vector<double> k_values;
  long samples = 1;
  Spacing spacing = Spacing::Linear;
};

struct ScenarioConfig {
  std::string model;
  std::map<std::string, double> parameters;
  ScenarioMechanism mechanism = ScenarioMechanism::Projective;
  Schedule schedule;
  InitialState initial;
  std::vector<OutputKind> outputs;
  std::string output_path = ".";
  std::string format = "csv";

  bool wants(OutputKind k) const;
};

struct SchemaIssue {
  std::string path;
  std::string reason;
};

/// Thrown by parse_config; carries every issue found, not only the first.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<SchemaIssue> issues);
  const std::vector<SchemaIssue>& issues() const { return issues_; }

 private:
  std::vector<SchemaIssue> issues_;
};

/// Parses and validates a scenario document. `overrides` are "dotted.path=value" strings
/// applied before validation; the value is read as JSON when it parses, otherwise as a string.
ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

}  // namespace zeno::cli
