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

#include "runner.hpp"

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <thread>

namespace qfiw_cli {

namespace {

void check(qfiw_status status, const std::string &context) {
    if (status != QFIW_OK) {
        throw ComputeError(context + ": " + qfiw_status_name(status) + ": " + qfiw_last_error());
    }
}

std::string yes_no(int flag) { return flag ? "yes" : "no"; }

struct TableHandle {
    qfiw_table *ptr = nullptr;
    ~TableHandle() { qfiw_table_free(ptr); }
};

double cell(const qfiw_table *table, size_t row, size_t column) {
    double value = 0.0;
    check(qfiw_table_value(table, row, column, &value), "table read");
    return value;
}

Table compute_bound(const BoundSpec &spec, int jobs, std::ostream &log) {
    qfiw_protocol_config c = spec.config;
    c.jobs = jobs;
    qfiw_bound_result r{};
    check(qfiw_run_protocol(&c, &r), "bound");
    Table table;
    table.columns = {"n",     "mu",       "nu",       "t",    "delta", "w_choice",     "mu_prime",
                     "nu_prime", "axis", "b_omega", "bound", "bound_over_n", "qfi",      "qfi_over_n",
                     "entanglement_witnessed", "validity_ok"};
    const double n = c.n_spins;
    table.add_row({format_integer(c.n_spins), format_number(r.mu_used), format_number(r.nu_used), format_number(c.t),
                   format_number(c.delta), qfiw_w_kind_name(c.w_kind),
                   format_number(r.has_w_params ? r.mu_prime : 0.0), format_number(r.has_w_params ? r.nu_prime : 0.0),
                   format_number(r.axis_used), format_number(r.b_omega), format_number(r.bound),
                   format_number(r.bound / n), format_number(r.qfi_exact), format_number(r.qfi_exact / n),
                   format_integer(r.entanglement_witnessed), format_integer(r.validity_ok)});
    log << "N = " << c.n_spins << ", delta = " << c.delta << ", W = " << qfiw_w_kind_name(c.w_kind)
        << ": bound = " << format_number(r.bound) << ", qfi = " << format_number(r.qfi_exact)
        << "; entanglement witnessed: " << yes_no(r.entanglement_witnessed) << '\n';
    if (!r.validity_ok) {
        log << "warning: t lies outside the window |t| <= pi / sqrt(qfi)\n";
    }
    return table;
}

Table compute_sweep_delta(const DeltaSweepSpec &spec, int jobs) {
    TableHandle handle;
    check(qfiw_sweep_delta(spec.n.data(), spec.t.data(), spec.mu.data(), spec.n.size(), spec.delta.data(),
                           spec.delta.size(), spec.w.data(), spec.w.size(), jobs, &handle.ptr),
          "sweep-delta");
    Table table;
    for (size_t j = 0; j < qfiw_table_columns(handle.ptr); ++j) {
        table.columns.emplace_back(qfiw_table_column_name(handle.ptr, j));
    }
    for (size_t i = 0; i < qfiw_table_rows(handle.ptr); ++i) {
        std::vector<std::string> cells;
        for (size_t j = 0; j < table.columns.size(); ++j) {
            const double v = cell(handle.ptr, i, j);
            if (table.columns[j] == "n") {
                cells.push_back(format_integer(std::llround(v)));
            } else if (table.columns[j] == "w_choice") {
                cells.emplace_back(qfiw_w_kind_name(static_cast<qfiw_w_kind>(std::lround(v))));
            } else {
                cells.push_back(format_number(v));
            }
        }
        table.add_row(std::move(cells));
    }
    return table;
}

Table compute_sweep_mu(const MuSweepSpec &spec, int jobs) {
    TableHandle handle;
    check(qfiw_sweep_mu(spec.n, spec.delta, spec.t, spec.mu.data(), spec.mu.size(), jobs, &handle.ptr), "sweep-mu");
    Table table;
    for (size_t j = 0; j < qfiw_table_columns(handle.ptr); ++j) {
        table.columns.emplace_back(qfiw_table_column_name(handle.ptr, j));
    }
    for (size_t i = 0; i < qfiw_table_rows(handle.ptr); ++i) {
        std::vector<std::string> cells;
        for (size_t j = 0; j < table.columns.size(); ++j) {
            cells.push_back(format_number(cell(handle.ptr, i, j)));
        }
        table.add_row(std::move(cells));
    }
    return table;
}

Table compute_photonic(const PhotonicSpec &spec) {
    Table table;
    table.columns = {"xi", "xi_prime", "delta", "t", "variance", "bound", "qfi", "inverse_delta_sq"};
    for (double xi : spec.xi) {
        for (double xi_prime : spec.xi_prime) {
            for (double delta : spec.delta) {
                const std::string where = "photonic (xi = " + format_number(xi) +
                                          ", xi_prime = " + format_number(xi_prime) +
                                          ", delta = " + format_number(delta) + ")";
                double effective = 0.0;
                double variance = 0.0;
                double bound = 0.0;
                double qfi = 0.0;
                check(qfiw_photonic_back_squeeze_resolution(delta, xi_prime, &effective), where);
                check(qfiw_photonic_squeezed_variance(xi, effective, &variance), where);
                check(qfiw_photonic_bound(xi, delta, xi_prime, spec.t, &bound), where);
                check(qfiw_photonic_qfi(xi, &qfi), where);
                const double limit = delta > 0.0 ? 1.0 / (delta * delta) : INFINITY;
                table.add_row({format_number(xi), format_number(xi_prime), format_number(delta),
                               format_number(spec.t), format_number(variance), format_number(bound),
                               format_number(qfi), format_number(limit)});
            }
        }
    }
    return table;
}

Table compute_nsit(const NsitSpec &spec, std::ostream &log) {
    Table table;
    table.columns = {"n",     "mu",    "nu",         "delta", "nodes",          "k_eff",
                     "b_pq",  "nsit_bound", "averaged_fidelity", "fidelity_floor", "qfi", "floor_respected",
                     "quadrature_drift"};
    for (const auto &c : spec.configs) {
        qfiw_nsit_result r{};
        check(qfiw_nsit_evaluate(&c, &r), "nsit (n = " + std::to_string(c.n_spins) +
                                              ", delta = " + format_number(c.delta) + ")");
        table.add_row({format_integer(c.n_spins), format_number(r.mu), format_number(r.nu), format_number(c.delta),
                       format_integer(c.nodes), format_number(r.k_eff), format_number(r.b_pq),
                       format_number(r.nsit_bound), format_number(r.averaged_fidelity),
                       format_number(r.fidelity_floor), format_number(r.qfi), format_integer(r.floor_respected),
                       format_number(r.quadrature_drift)});
        if (r.quadrature_drift > 1e-9) {
            log << "warning: nsit quadrature not converged at n = " << c.n_spins << ", delta = " << format_number(c.delta)
                << " (drift " << format_number(r.quadrature_drift) << "); increase nodes\n";
        }
    }
    return table;
}

Table compute_min_time(const MinTimeSpec &spec, std::ostream &log) {
    double t_min = 0.0;
    check(qfiw_min_time_for_error(spec.delta_stat, spec.qfi, &t_min), "min-time");
    log << "t_min = " << format_number(t_min) << '\n';
    Table table;
    table.columns = {"delta_stat", "qfi", "t_min"};
    table.add_row({format_number(spec.delta_stat), format_number(spec.qfi), format_number(t_min)});
    return table;
}

// Groups rows by the values of `keys`, preserving first-appearance order.
std::vector<std::pair<std::string, std::vector<size_t>>> group_rows(const Table &table,
                                                                     const std::vector<std::string> &keys) {
    std::vector<std::pair<std::string, std::vector<size_t>>> groups;
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        std::string label;
        for (const auto &k : keys) {
            label += (label.empty() ? "" : ", ") + k + "=" + table.rows[i][table.column_index(k)];
        }
        auto [it, inserted] = index.emplace(label, groups.size());
        if (inserted) {
            groups.push_back({label, {}});
        }
        groups[it->second].second.push_back(i);
    }
    return groups;
}

Series series_of(const Table &table, const std::string &label, const std::vector<size_t> &rows,
                 const std::string &x, const std::string &y, bool dashed = false) {
    Series s{label, {}, dashed};
    for (size_t i : rows) {
        s.points.emplace_back(table.number(i, x), table.number(i, y));
    }
    return s;
}

bool spans_decades(const Table &table, const std::string &column) {
    double lo = INFINITY;
    double hi = 0.0;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const double v = table.number(i, column);
        if (v <= 0.0) {
            return false;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi >= 20.0 * lo;
}

}  // namespace

int resolve_jobs(std::optional<int> requested, const char *environment_value) {
    if (requested) {
        if (*requested < 1) {
            throw ConfigError("--jobs must be >= 1");
        }
        return *requested;
    }
    if (environment_value != nullptr && *environment_value != '\0') {
        size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(environment_value, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != std::string(environment_value).size() || value < 1) {
            throw ConfigError(std::string("QFI_WITNESS_JOBS must be a positive integer, got '") + environment_value +
                              "'");
        }
        return value;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Table compute(const ParsedConfig &config, int jobs, std::ostream &log) {
    return std::visit(
        [&](const auto &spec) -> Table {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, BoundSpec>) {
                return compute_bound(spec, jobs, log);
            } else if constexpr (std::is_same_v<T, DeltaSweepSpec>) {
                return compute_sweep_delta(spec, jobs);
            } else if constexpr (std::is_same_v<T, MuSweepSpec>) {
                return compute_sweep_mu(spec, jobs);
            } else if constexpr (std::is_same_v<T, PhotonicSpec>) {
                return compute_photonic(spec);
            } else if constexpr (std::is_same_v<T, NsitSpec>) {
                return compute_nsit(spec, log);
            } else {
                return compute_min_time(spec, log);
            }
        },
        config.spec);
}

std::optional<LineChart> chart_for(Command command, const Table &table) {
    LineChart chart;
    switch (command) {
    case Command::SweepDelta: {
        chart = {"QFI bound versus detector resolution", "delta", "value / N", spans_decades(table, "delta"), true, {}};
        for (const auto &[label, rows] : group_rows(table, {"n", "w_choice"})) {
            chart.series.push_back(series_of(table, "bound, " + label, rows, "delta", "bound_over_n"));
        }
        for (const auto &[label, rows] : group_rows(table, {"n"})) {
            std::vector<size_t> first_w;
            const std::string w0 = table.rows[rows.front()][table.column_index("w_choice")];
            for (size_t i : rows) {
                if (table.rows[i][table.column_index("w_choice")] == w0) {
                    first_w.push_back(i);
                }
            }
            chart.series.push_back(series_of(table, "qfi, " + label, first_w, "delta", "qfi_over_n", true));
        }
        return chart;
    }
    case Command::SweepMu: {
        chart = {"QFI bound versus twisting strength", "mu", "value", spans_decades(table, "mu"), true, {}};
        std::vector<size_t> all(table.rows.size());
        for (size_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        chart.series.push_back(series_of(table, "W = identity", all, "mu", "bound_identity"));
        chart.series.push_back(series_of(table, "W = adjoint", all, "mu", "bound_adjoint"));
        chart.series.push_back(series_of(table, "W optimized", all, "mu", "bound_optimized"));
        chart.series.push_back(series_of(table, "qfi", all, "mu", "qfi", true));
        return chart;
    }
    case Command::Photonic: {
        chart = {"Photonic QFI bound", "delta", "value", spans_decades(table, "delta"), true, {}};
        for (const auto &[label, rows] : group_rows(table, {"xi", "xi_prime"})) {
            chart.series.push_back(series_of(table, "bound, " + label, rows, "delta", "bound"));
        }
        const auto groups = group_rows(table, {"xi", "xi_prime"});
        chart.series.push_back(series_of(table, "1/delta^2", groups.front().second, "delta", "inverse_delta_sq", true));
        return chart;
    }
    case Command::Nsit: {
        chart = {"Averaged fidelity and its floor", "mu", "fidelity", false, false, {}};
        for (const auto &[label, rows] : group_rows(table, {"n", "delta"})) {
            chart.series.push_back(series_of(table, "fidelity, " + label, rows, "mu", "averaged_fidelity"));
            chart.series.push_back(series_of(table, "floor, " + label, rows, "mu", "fidelity_floor", true));
        }
        return chart;
    }
    case Command::Bound:
    case Command::MinTime:
        return std::nullopt;
    }
    return std::nullopt;
}

bool write_plot(Command command, const std::filesystem::path &csv_path, const std::filesystem::path &svg_path) {
    const auto chart = chart_for(command, read_csv(csv_path));
    if (!chart) {
        return false;
    }
    std::ofstream out(svg_path, std::ios::binary | std::ios::trunc);
    out << render_svg(*chart);
    if (!out.flush()) {
        throw std::runtime_error(svg_path.string() + ": write failed");
    }
    return true;
}

int run(const RunManifest &manifest, std::ostream &log, std::ostream &err) {
    const auto start = std::chrono::steady_clock::now();
    const std::string name(command_name(manifest.command));
    ParsedConfig config;
    try {
        config = parse_config(manifest.command, manifest.config_path);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto csv_path = manifest.output_dir / (name + ".csv");
    const auto svg_path = manifest.output_dir / (name + ".svg");
    const auto meta_path = manifest.output_dir / "run_metadata.yaml";
    try {
        std::filesystem::create_directories(manifest.output_dir);
        std::ofstream probe(meta_path, std::ios::binary | std::ios::trunc);
        if (!probe) {
            throw std::runtime_error(manifest.output_dir.string() + ": output directory is not writable");
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }

    Table table;
    try {
        table = compute(config, manifest.parallelism, log);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    }

    std::vector<std::string> outputs;
    try {
        write_csv(csv_path, table);
        outputs.push_back(csv_path.filename().string());
        if (manifest.emit_plots && write_plot(manifest.command, csv_path, svg_path)) {
            outputs.push_back(svg_path.filename().string());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        YAML::Emitter meta;
        meta << YAML::BeginMap;
        meta << YAML::Key << "command" << YAML::Value << name;
        meta << YAML::Key << "version" << YAML::Value << qfiw_version();
        meta << YAML::Key << "config_path" << YAML::Value << manifest.config_path.string();
        meta << YAML::Key << "jobs" << YAML::Value << manifest.parallelism;
        meta << YAML::Key << "plots" << YAML::Value << manifest.emit_plots;
        meta << YAML::Key << "rows" << YAML::Value << table.rows.size();
        meta << YAML::Key << "wall_time_seconds" << YAML::Value << seconds;
        meta << YAML::Key << "outputs" << YAML::Value << YAML::Flow << outputs;
        meta << YAML::Key << "config" << YAML::Value << YAML::Literal << config.source_text;
        meta << YAML::EndMap;
        std::ofstream out(meta_path, std::ios::binary | std::ios::trunc);
        out << meta.c_str() << '\n';
        if (!out.flush()) {
            throw std::runtime_error(meta_path.string() + ": write failed");
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    log << "wrote " << table.rows.size() << " row(s) to " << csv_path.string() << '\n';
    return kExitOk;
}

}  // namespace qfiw_cli
