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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeno/models.hpp"
#include "zeno/output.hpp"
#include "zeno/runner.hpp"
#include "zeno/scenario.hpp"

namespace {

using namespace zeno;

int report(const Error& e) {
  if (const auto* schema = dynamic_cast<const cli::SchemaError*>(&e)) {
    for (const auto& issue : schema->issues()) std::cerr << "schema: " << issue.path << ": " << issue.reason << '\n';
  } else {
    std::cerr << "error: " << e.what() << '\n';
  }
  return cli::exit_code_for(e.code());
}

void list_models() {
  for (const auto& info : models::catalog()) {
    std::cout << info.name << "  " << info.description << '\n';
    for (const auto& [name, value] : info.parameters) {
      std::cout << "    " << name << " = " << value << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeno: quantum Zeno dynamics scenario runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run a scenario and write its outputs");
  run->add_option("config", config_path, "scenario file")->required();
  run->add_option("--set", overrides, "override a config value, key.path=value")->take_all();
  run->add_option("--output-dir", output_dir, "directory for output files (overrides output.path)");
  run->add_flag("--quiet", quiet, "no summary on stdout");

  auto* validate = app.add_subcommand("validate", "check a scenario file without running it");
  validate->add_option("config", config_path, "scenario file")->required();
  validate->add_option("--set", overrides, "override a config value, key.path=value")->take_all();
  validate->add_flag("--quiet", quiet, "no message on success");

  auto* list = app.add_subcommand("list-models", "print the model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitSchema;
  }

  try {
    if (list->parsed()) {
      list_models();
      return cli::kExitOk;
    }
    const auto cfg = cli::parse_config(cli::read_file(config_path), overrides);
    if (validate->parsed()) {
      if (!quiet) std::cout << config_path << ": ok\n";
      return cli::kExitOk;
    }
    cli::RunOptions opt;
    if (!output_dir.empty()) opt.output_dir = output_dir;
    opt.quiet = quiet;
    cli::run_scenario(cfg, opt, std::cout);
    return cli::kExitOk;
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNumeric;
  }
}
