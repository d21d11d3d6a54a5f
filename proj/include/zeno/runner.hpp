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

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "zeno/error.hpp"
#include "zeno/scenario.hpp"

namespace zeno::cli {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitSchema = 2, kExitNumeric = 3, kExitIo = 4 };

int exit_code_for(ErrorCode code);

struct RenderedScenario {
  std::vector<std::pair<std::string, std::string>> files;  // file name, content; in emission order
  std::vector<std::string> notes;                          // human-readable summary lines
};

/// Runs every engine the scenario asks for and renders the output files in memory.
RenderedScenario render_scenario(const ScenarioConfig& cfg);

struct RunOptions {
  std::optional<std::string> output_dir;  // overrides output.path
  bool quiet = false;
};

/// render_scenario, then writes all files. Returns the written paths.
std::vector<std::string> run_scenario(const ScenarioConfig& cfg, const RunOptions& opt, std::ostream& log);

}  // namespace zeno::cli
