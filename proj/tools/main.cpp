// Copyright 2026 The qfi-witness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "cli/runner.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Lower bounds on the quantum Fisher information from coarse-grained measurements", "qfi-witness"};
    app.set_version_flag("--version", std::string(qfiw_version()));
    app.require_subcommand(1);

    qfiw_cli::RunManifest manifest;
    std::optional<int> jobs;
    for (auto command : {qfiw_cli::Command::Bound, qfiw_cli::Command::SweepDelta, qfiw_cli::Command::SweepMu,
                         qfiw_cli::Command::Photonic, qfiw_cli::Command::Nsit, qfiw_cli::Command::MinTime}) {
        auto *sub = app.add_subcommand(std::string(qfiw_cli::command_name(command)));
        sub->add_option("--config", manifest.config_path, "YAML configuration file")->required();
        sub->add_option("--out", manifest.output_dir, "Output directory, created if absent")->required();
        sub->add_option("--jobs", jobs, "Worker threads (default: QFI_WITNESS_JOBS or hardware threads)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--plots", manifest.emit_plots, "Also write an SVG plot of the table");
        sub->callback([&manifest, command] { manifest.command = command; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        manifest.parallelism = qfiw_cli::resolve_jobs(jobs, std::getenv("QFI_WITNESS_JOBS"));
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return qfiw_cli::kExitUsage;
    }
    return qfiw_cli::run(manifest, std::cout, std::cerr);
}
