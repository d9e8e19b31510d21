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
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfiw/qfiw.h"

namespace qfiw_cli {

enum class Command { Bound, SweepDelta, SweepMu, Photonic, Nsit, MinTime };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

/// Raised for unreadable, malformed or out-of-domain configuration files.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BoundSpec {
    qfiw_protocol_config config;
};

struct DeltaSweepSpec {
    std::vector<int> n;
    std::vector<double> t;   // one per group
    std::vector<double> mu;  // one per group, NaN selects the squeezing optimum
    std::vector<double> delta;
    std::vector<qfiw_w_kind> w;
};

struct MuSweepSpec {
    int n = 0;
    double delta = 0.0;
    double t = 0.0;
    std::vector<double> mu;
};

struct PhotonicSpec {
    std::vector<double> xi;
    std::vector<double> xi_prime;
    std::vector<double> delta;
    double t = 0.0;
};

struct NsitSpec {
    std::vector<qfiw_nsit_config> configs;
};

struct MinTimeSpec {
    double delta_stat = 0.0;
    double qfi = 0.0;
};

using Spec = std::variant<BoundSpec, DeltaSweepSpec, MuSweepSpec, PhotonicSpec, NsitSpec, MinTimeSpec>;

struct ParsedConfig {
    Command command;
    Spec spec;
    std::string source_text;
};

/// Parses and validates a YAML configuration for `command`.
ParsedConfig parse_config(Command command, const std::filesystem::path &path);

/// Same as parse_config on in-memory text; `origin` prefixes diagnostics.
ParsedConfig parse_config_text(Command command, std::string_view text, std::string_view origin);

}  // namespace qfiw_cli
