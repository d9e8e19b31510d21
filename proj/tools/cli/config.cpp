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

#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace qfiw_cli {

namespace {

constexpr double kAuto = std::numeric_limits<double>::quiet_NaN();

class Reader {
  public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node &node, std::string_view key, std::string_view message) const {
        std::ostringstream out;
        out << origin_;
        if (node.IsDefined() && node.Mark().line >= 0) {
            out << ':' << node.Mark().line + 1;
        }
        out << ": key '" << key << "': " << message;
        throw ConfigError(out.str());
    }

    void check_keys(const YAML::Node &map, const std::set<std::string> &allowed, std::string_view context) const {
        for (const auto &entry : map) {
            const auto key = entry.first.as<std::string>();
            if (allowed.count(key) == 0) {
                std::string list;
                for (const auto &a : allowed) {
                    list += (list.empty() ? "" : ", ") + a;
                }
                fail(entry.first, key, "unknown key in " + std::string(context) + " (allowed: " + list + ")");
            }
        }
    }

    const YAML::Node require(const YAML::Node &map, const std::string &key) const {
        const YAML::Node node = map[key];
        if (!node.IsDefined() || node.IsNull()) {
            fail(map, key, "required key is missing");
        }
        return node;
    }

    double number(const YAML::Node &node, std::string_view key) const {
        if (!node.IsScalar()) {
            fail(node, key, "expected a number");
        }
        double value = 0.0;
        if (!YAML::convert<double>::decode(node, value)) {
            fail(node, key, "expected a number, got '" + node.Scalar() + "'");
        }
        if (!std::isfinite(value)) {
            fail(node, key, "must be finite");
        }
        return value;
    }

    int integer(const YAML::Node &node, std::string_view key) const {
        const double value = number(node, key);
        if (value != std::floor(value) || std::abs(value) > 1e9) {
            fail(node, key, "expected an integer");
        }
        return static_cast<int>(value);
    }

    bool is_word(const YAML::Node &node, std::string_view word) const {
        return node.IsScalar() && node.Scalar() == word;
    }

    // A scalar, a sequence, or {from, to, count[, spacing: linear|log]}.
    std::vector<double> numbers(const YAML::Node &node, std::string_view key) const {
        std::vector<double> values;
        if (node.IsScalar()) {
            values.push_back(number(node, key));
        } else if (node.IsSequence()) {
            for (const auto &item : node) {
                values.push_back(number(item, key));
            }
        } else if (node.IsMap()) {
            check_keys(node, {"from", "to", "count", "spacing"}, std::string(key) + " range");
            const double from = number(require(node, "from"), key);
            const double to = number(require(node, "to"), key);
            const int count = integer(require(node, "count"), key);
            if (count < 1) {
                fail(node, key, "range count must be >= 1");
            }
            bool log_spacing = false;
            if (const YAML::Node s = node["spacing"]; s.IsDefined()) {
                if (is_word(s, "log")) {
                    log_spacing = true;
                } else if (!is_word(s, "linear")) {
                    fail(s, key, "range spacing must be 'linear' or 'log'");
                }
            }
            if (log_spacing && !(from > 0.0 && to > 0.0)) {
                fail(node, key, "log spacing needs positive endpoints");
            }
            for (int i = 0; i < count; ++i) {
                const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
                values.push_back(log_spacing ? std::exp(std::log(from) + f * (std::log(to) - std::log(from)))
                                             : from + f * (to - from));
            }
            values.front() = from;
            values.back() = count == 1 ? from : to;
        } else {
            fail(node, key, "expected a number or a list of numbers");
        }
        if (values.empty()) {
            fail(node, key, "list must not be empty");
        }
        return values;
    }

    std::vector<int> integers(const YAML::Node &node, std::string_view key) const {
        std::vector<int> values;
        if (node.IsSequence()) {
            for (const auto &item : node) {
                values.push_back(integer(item, key));
            }
        } else {
            values.push_back(integer(node, key));
        }
        if (values.empty()) {
            fail(node, key, "list must not be empty");
        }
        return values;
    }

    // "auto-optimal" or a number; NaN marks the automatic choice.
    double mu_value(const YAML::Node &node) const {
        return is_word(node, "auto-optimal") ? kAuto : number(node, "mu");
    }

    std::vector<double> mu_values(const YAML::Node &node) const {
        if (node.IsSequence()) {
            std::vector<double> values;
            for (const auto &item : node) {
                values.push_back(mu_value(item));
            }
            if (values.empty()) {
                fail(node, "mu", "list must not be empty");
            }
            return values;
        }
        if (node.IsMap()) {
            return numbers(node, "mu");
        }
        return {mu_value(node)};
    }

    void positive_spins(const YAML::Node &node, const std::vector<int> &n) const {
        for (int v : n) {
            if (v < 1) {
                fail(node, "n", "must be >= 1");
            }
        }
    }

    void non_negative(const YAML::Node &node, std::string_view key, const std::vector<double> &values) const {
        for (double v : values) {
            if (v < 0.0) {
                fail(node, key, "must be >= 0");
            }
        }
    }

    void positive(const YAML::Node &node, std::string_view key, const std::vector<double> &values) const {
        for (double v : values) {
            if (!(v > 0.0)) {
                fail(node, key, "must be > 0");
            }
        }
    }

    qfiw_w_kind w_kind(const YAML::Node &node, bool allow_twist, double *mu_prime, double *nu_prime) const {
        if (is_word(node, "identity")) {
            return QFIW_W_IDENTITY;
        }
        if (is_word(node, "adjoint")) {
            return QFIW_W_ADJOINT;
        }
        if (is_word(node, "optimize")) {
            return QFIW_W_OPTIMIZE;
        }
        if (node.IsMap() && allow_twist) {
            check_keys(node, {"twist"}, "w");
            const YAML::Node twist = require(node, "twist");
            if (!twist.IsMap()) {
                fail(twist, "twist", "expected {mu_prime, nu_prime}");
            }
            check_keys(twist, {"mu_prime", "nu_prime"}, "twist");
            *mu_prime = number(require(twist, "mu_prime"), "mu_prime");
            *nu_prime = number(require(twist, "nu_prime"), "nu_prime");
            if (*mu_prime < 0.0) {
                fail(twist["mu_prime"], "mu_prime", "must be >= 0");
            }
            return QFIW_W_TWIST;
        }
        fail(node, "w",
             allow_twist ? "expected identity, adjoint, optimize or {twist: {mu_prime, nu_prime}}"
                         : "expected identity, adjoint or optimize");
    }

    void only_auto_nu(const YAML::Node &root) const {
        if (const YAML::Node nu = root["nu"]; nu.IsDefined() && !is_word(nu, "auto")) {
            fail(nu, "nu", "this command supports only nu: auto");
        }
    }

  private:
    std::string origin_;
};

BoundSpec parse_bound(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"n", "mu", "nu", "t", "delta", "w", "axis"}, "bound config");
    BoundSpec spec{};
    qfiw_protocol_config &c = spec.config;
    qfiw_protocol_config_init(&c);
    c.n_spins = r.integer(r.require(root, "n"), "n");
    r.positive_spins(root["n"], {c.n_spins});
    if (const YAML::Node mu = root["mu"]; mu.IsDefined()) {
        const double v = r.mu_value(mu);
        c.mu_auto = std::isnan(v) ? 1 : 0;
        c.mu = std::isnan(v) ? 0.0 : v;
    }
    if (const YAML::Node nu = root["nu"]; nu.IsDefined() && !r.is_word(nu, "auto")) {
        c.nu_auto = 0;
        c.nu = r.number(nu, "nu");
    }
    c.t = r.number(r.require(root, "t"), "t");
    r.positive(root["t"], "t", {c.t});
    const YAML::Node delta = r.require(root, "delta");
    if (!delta.IsScalar()) {
        r.fail(delta, "delta", "bound takes a single value; use sweep-delta for lists");
    }
    c.delta = r.number(delta, "delta");
    r.non_negative(delta, "delta", {c.delta});
    if (const YAML::Node w = root["w"]; w.IsDefined()) {
        c.w_kind = r.w_kind(w, true, &c.mu_prime, &c.nu_prime);
    }
    if (const YAML::Node axis = root["axis"]; axis.IsDefined() && !r.is_word(axis, "optimize")) {
        c.axis_optimize = 0;
        c.axis = r.number(axis, "axis");
    }
    return spec;
}

DeltaSweepSpec parse_sweep_delta(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"n", "mu", "nu", "t", "delta", "w"}, "sweep-delta config");
    r.only_auto_nu(root);
    DeltaSweepSpec spec;
    spec.n = r.integers(r.require(root, "n"), "n");
    r.positive_spins(root["n"], spec.n);
    const size_t groups = spec.n.size();

    auto per_group = [&](const YAML::Node &node, std::string_view key, std::vector<double> values) {
        if (values.size() == 1) {
            values.assign(groups, values.front());
        } else if (values.size() != groups) {
            r.fail(node, key, "needs one value or one value per entry of n (" + std::to_string(groups) + ")");
        }
        return values;
    };
    spec.t = per_group(root["t"], "t", r.numbers(r.require(root, "t"), "t"));
    r.positive(root["t"], "t", spec.t);
    if (const YAML::Node mu = root["mu"]; mu.IsDefined()) {
        spec.mu = per_group(mu, "mu", r.mu_values(mu));
    } else {
        spec.mu.assign(groups, kAuto);
    }
    spec.delta = r.numbers(r.require(root, "delta"), "delta");
    r.non_negative(root["delta"], "delta", spec.delta);
    const YAML::Node w = root["w"];
    if (!w.IsDefined()) {
        spec.w = {QFIW_W_IDENTITY, QFIW_W_ADJOINT};
    } else if (w.IsSequence()) {
        for (const auto &item : w) {
            spec.w.push_back(r.w_kind(item, false, nullptr, nullptr));
        }
        if (spec.w.empty()) {
            r.fail(w, "w", "list must not be empty");
        }
    } else {
        spec.w.push_back(r.w_kind(w, false, nullptr, nullptr));
    }
    return spec;
}

MuSweepSpec parse_sweep_mu(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"n", "mu", "nu", "t", "delta"}, "sweep-mu config");
    r.only_auto_nu(root);
    MuSweepSpec spec;
    spec.n = r.integer(r.require(root, "n"), "n");
    r.positive_spins(root["n"], {spec.n});
    spec.t = r.number(r.require(root, "t"), "t");
    r.positive(root["t"], "t", {spec.t});
    spec.delta = r.number(r.require(root, "delta"), "delta");
    r.non_negative(root["delta"], "delta", {spec.delta});
    spec.mu = r.numbers(r.require(root, "mu"), "mu");
    return spec;
}

PhotonicSpec parse_photonic(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"xi", "xi_prime", "delta", "t"}, "photonic config");
    PhotonicSpec spec;
    spec.xi = r.numbers(r.require(root, "xi"), "xi");
    spec.xi_prime = root["xi_prime"].IsDefined() ? r.numbers(root["xi_prime"], "xi_prime") : std::vector{0.0};
    spec.delta = r.numbers(r.require(root, "delta"), "delta");
    r.non_negative(root["delta"], "delta", spec.delta);
    spec.t = r.number(r.require(root, "t"), "t");
    r.positive(root["t"], "t", {spec.t});
    return spec;
}

NsitSpec parse_nsit(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"n", "mu", "nu", "delta", "nodes", "k_eff"}, "nsit config");
    const std::vector<int> n = r.integers(r.require(root, "n"), "n");
    r.positive_spins(root["n"], n);
    const std::vector<double> mus = root["mu"].IsDefined() ? r.mu_values(root["mu"]) : std::vector{kAuto};
    const std::vector<double> deltas = r.numbers(r.require(root, "delta"), "delta");
    r.positive(root["delta"], "delta", deltas);

    qfiw_nsit_config base;
    qfiw_nsit_config_init(&base);
    if (const YAML::Node nu = root["nu"]; nu.IsDefined() && !r.is_word(nu, "auto")) {
        base.nu_auto = 0;
        base.nu = r.number(nu, "nu");
    }
    if (const YAML::Node nodes = root["nodes"]; nodes.IsDefined()) {
        base.nodes = r.integer(nodes, "nodes");
        if (base.nodes < 1) {
            r.fail(nodes, "nodes", "must be >= 1");
        }
    }
    if (const YAML::Node k = root["k_eff"]; k.IsDefined()) {
        base.k_eff = r.number(k, "k_eff");
        r.positive(k, "k_eff", {base.k_eff});
    }
    NsitSpec spec;
    for (int spins : n) {
        for (double mu : mus) {
            for (double delta : deltas) {
                qfiw_nsit_config c = base;
                c.n_spins = spins;
                c.mu_auto = std::isnan(mu) ? 1 : 0;
                c.mu = std::isnan(mu) ? 0.0 : mu;
                c.delta = delta;
                spec.configs.push_back(c);
            }
        }
    }
    return spec;
}

MinTimeSpec parse_min_time(const Reader &r, const YAML::Node &root) {
    r.check_keys(root, {"delta_stat", "qfi"}, "min-time config");
    MinTimeSpec spec;
    spec.delta_stat = r.number(r.require(root, "delta_stat"), "delta_stat");
    if (!(spec.delta_stat > 0.0 && spec.delta_stat <= 1.0)) {
        r.fail(root["delta_stat"], "delta_stat", "must lie in (0, 1]");
    }
    spec.qfi = r.number(r.require(root, "qfi"), "qfi");
    r.positive(root["qfi"], "qfi", {spec.qfi});
    return spec;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::Bound, Command::SweepDelta, Command::SweepMu, Command::Photonic, Command::Nsit,
                      Command::MinTime}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view command_name(Command command) {
    switch (command) {
    case Command::Bound:
        return "bound";
    case Command::SweepDelta:
        return "sweep-delta";
    case Command::SweepMu:
        return "sweep-mu";
    case Command::Photonic:
        return "photonic";
    case Command::Nsit:
        return "nsit";
    case Command::MinTime:
        return "min-time";
    }
    return "unknown";
}

ParsedConfig parse_config_text(Command command, std::string_view text, std::string_view origin) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException &e) {
        throw ConfigError(std::string(origin) + ":" + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
    }
    if (!root.IsMap()) {
        throw ConfigError(std::string(origin) + ": expected a mapping of configuration keys");
    }
    const Reader r{std::string(origin)};
    ParsedConfig parsed{command, BoundSpec{}, std::string(text)};
    try {
        switch (command) {
        case Command::Bound:
            parsed.spec = parse_bound(r, root);
            break;
        case Command::SweepDelta:
            parsed.spec = parse_sweep_delta(r, root);
            break;
        case Command::SweepMu:
            parsed.spec = parse_sweep_mu(r, root);
            break;
        case Command::Photonic:
            parsed.spec = parse_photonic(r, root);
            break;
        case Command::Nsit:
            parsed.spec = parse_nsit(r, root);
            break;
        case Command::MinTime:
            parsed.spec = parse_min_time(r, root);
            break;
        }
    } catch (const YAML::Exception &e) {
        throw ConfigError(std::string(origin) + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return parsed;
}

ParsedConfig parse_config(Command command, const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(command, text.str(), path.string());
}

}  // namespace qfiw_cli
