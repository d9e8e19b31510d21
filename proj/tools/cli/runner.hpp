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

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "config.hpp"
#include "csv.hpp"
#include "svg.hpp"

namespace qfiw_cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitIo = 3,
    kExitCompute = 4,
};

struct RunManifest {
    Command command = Command::Bound;
    std::filesystem::path config_path;
    std::filesystem::path output_dir;
    int parallelism = 1;
    bool emit_plots = false;
};

/// Raised when the numerical library reports an error.
class ComputeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Explicit --jobs wins, then QFI_WITNESS_JOBS, then the hardware thread count.
int resolve_jobs(std::optional<int> requested, const char *environment_value);

/// Evaluates a parsed config. Human-readable summaries go to `log`.
Table compute(const ParsedConfig &config, int jobs, std::ostream &log);

/// Builds the chart for a command's table, if the command has one.
std::optional<LineChart> chart_for(Command command, const Table &table);

/// Re-reads `csv_path` and writes its chart to `svg_path`; false if the command has no chart.
bool write_plot(Command command, const std::filesystem::path &csv_path, const std::filesystem::path &svg_path);

/// Full pipeline: parse, compute, write CSV, plot and metadata.
int run(const RunManifest &manifest, std::ostream &log, std::ostream &err);

}  // namespace qfiw_cli
