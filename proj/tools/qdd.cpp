// Copyright 2026 The qdd Authors
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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdd/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qdd - dynamical decoupling experiments on semigroup dilations"};
  app.require_subcommand(0, 1);

  bool print_schema = false;
  app.add_flag("--print-schema", print_schema,
               "Print the experiment config format and exit");

  std::string config_path;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Directory for relative output paths");

  CLI11_PARSE(app, argc, argv);

  if (print_schema) {
    std::cout << qdd::config_schema_text();
    return 0;
  }
  if (!run->parsed()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    const qdd::ExperimentConfig cfg = qdd::load_experiment_config(config_path);
    std::optional<std::filesystem::path> out;
    if (!out_dir.empty()) out = out_dir;
    const qdd::RunResult result = qdd::run_experiment(cfg, out);
    for (const std::string& note : result.notes) std::cout << note << "\n";
    std::cout << "wrote " << result.output_file.string() << "\n";
    return 0;
  } catch (const qdd::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const qdd::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
}
