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

#include "protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "optimize.hpp"
#include "parallel.hpp"

namespace qfiw {

namespace {

constexpr int kAxisGrid = 32;
constexpr double kAxisTolerance = 1e-6;
constexpr int kWGrid = 24;
constexpr int kWAxisGrid = 16;
constexpr int kWTopSeeds = 8;
constexpr int kWBasinSeeds = 4;
constexpr int kWRestarts = 20;
constexpr int kWMaxEvaluations = 4000;
constexpr double kWTolerance = 1e-6;
constexpr double kWSeedTolerance = 1e-4;

struct PairStates {
    DickeState psi0;
    DickeState psi1;
};

// Shared evaluation context for one (N, mu, nu, t, Delta) configuration.
class Evaluator {
public:
    explicit Evaluator(const ProtocolConfig &cfg)
        : cfg_(cfg), prepared_(prepare_states(cfg)),
          qfi_(qfi_pure(prepared_.phi0, Generator::sz())) {}

    const PreparedStates &prepared() const { return prepared_; }

    PairStates pair_for(const WChoice &w) const {
        return {apply_w(prepared_.phi0, w, prepared_.mu, prepared_.nu),
                apply_w(prepared_.phi1, w, prepared_.mu, prepared_.nu)};
    }

    // Best (or fixed) axis for the given measured pair.
    BoundResult measure(const PairStates &pair) const {
        if (cfg_.axis) {
            return finish(pair, *cfg_.axis);
        }
        const auto best = opt::periodic_grid_golden_minimize(
            [&](double axis) { return -bound_at_axis(pair.psi0, pair.psi1, axis, cfg_.resolution, cfg_.t); }, 0.0,
            std::numbers::pi, kAxisGrid, kAxisTolerance);
        return finish(pair, best.x);
    }

    BoundResult measure_at(const PairStates &pair, double axis) const { return finish(pair, axis); }

private:
    BoundResult finish(const PairStates &pair, double axis) const {
        BoundResult r;
        Overlap overlap;
        r.bound = bound_at_axis(pair.psi0, pair.psi1, axis, cfg_.resolution, cfg_.t, &overlap);
        r.b_omega = overlap.coefficient;
        r.defect = overlap.defect;
        r.qfi_exact = qfi_;
        r.mu_used = prepared_.mu;
        r.nu_used = prepared_.nu;
        r.axis_used = axis;
        r.entanglement_witnessed = r.bound > static_cast<double>(cfg_.n_spins);
        r.validity_ok = fidelity_bound(qfi_, cfg_.t).valid;
        return r;
    }

    const ProtocolConfig &cfg_;
    PreparedStates prepared_;
    double qfi_;
};

double resolved_mu(const ProtocolConfig &cfg) { return cfg.mu ? *cfg.mu : optimal_mu(cfg.n_spins); }

}  // namespace

std::string w_choice_name(const WChoice &w) {
    switch (w.index()) {
    case 0:
        return "identity";
    case 1:
        return "adjoint";
    case 2:
        return "twist";
    default:
        return "optimize";
    }
}

void ProtocolConfig::validate() const {
    auto fail = [](const std::string &what) { throw std::invalid_argument("ProtocolConfig: " + what); };
    if (n_spins < 1) {
        fail("n must be >= 1");
    }
    if (mu && !std::isfinite(*mu)) {
        fail("mu must be finite");
    }
    if (nu && !std::isfinite(*nu)) {
        fail("nu must be finite");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        fail("t must be finite and > 0");
    }
    if (!(resolution >= 0.0) || !std::isfinite(resolution)) {
        fail("delta must be finite and >= 0");
    }
    if (const auto *tw = std::get_if<WTwist>(&w)) {
        if (!(tw->mu_prime >= 0.0) || !std::isfinite(tw->mu_prime) || !std::isfinite(tw->nu_prime)) {
            fail("twist requires finite mu_prime >= 0 and finite nu_prime");
        }
    }
    if (axis && !std::isfinite(*axis)) {
        fail("axis must be finite");
    }
    if (jobs < 1) {
        fail("jobs must be >= 1");
    }
}

PreparedStates prepare_states(const ProtocolConfig &cfg) {
    cfg.validate();
    const double mu = resolved_mu(cfg);
    const double nu = cfg.nu ? *cfg.nu : optimal_nu(cfg.n_spins, mu);
    auto phi0 = one_axis_twist(coherent_state_x(cfg.n_spins), mu, nu);
    auto phi1 = evolve(phi0, Generator::sz(), cfg.t);
    return {std::move(phi0), std::move(phi1), mu, nu};
}

DickeState apply_w(const DickeState &state, const WChoice &w, double mu, double nu) {
    if (std::holds_alternative<WIdentity>(w)) {
        return state;
    }
    if (std::holds_alternative<WAdjoint>(w)) {
        // V^dagger = exp(i (mu/2) S_z^2) exp(i nu S_x)
        return twist(rotate_x(state, -nu), -mu);
    }
    if (const auto *tw = std::get_if<WTwist>(&w)) {
        DickeState out = tw->nu_prime != 0.0 ? rotate_x(state, tw->nu_prime) : state;
        return tw->mu_prime != 0.0 ? twist(out, tw->mu_prime) : out;
    }
    throw std::invalid_argument("apply_w: W must be resolved before it can be applied");
}

double bound_at_axis(const DickeState &psi0, const DickeState &psi1, double axis, double resolution, double t,
                     Overlap *overlap, Refinement refinement) {
    const auto measurement = make_measurement(psi0.n_spins(), axis, resolution);
    const auto p = outcome_distribution(psi0, measurement);
    const auto q = outcome_distribution(psi1, measurement);
    const Overlap o = bhattacharyya_overlap(p, q, refinement);
    if (overlap != nullptr) {
        *overlap = o;
    }
    return qfi_lower_bound_from_defect(o.defect, t);
}

BoundResult run_protocol(const ProtocolConfig &cfg) {
    if (std::holds_alternative<WOptimize>(cfg.w)) {
        return optimize_w(cfg).result;
    }
    const Evaluator evaluator(cfg);
    auto result = evaluator.measure(evaluator.pair_for(cfg.w));
    if (const auto *tw = std::get_if<WTwist>(&cfg.w)) {
        result.w_params_used = *tw;
    }
    return result;
}

AxisOptimum optimize_axis(const ProtocolConfig &cfg) {
    ProtocolConfig free_axis = cfg;
    free_axis.axis.reset();
    auto result = run_protocol(free_axis);
    return {result.axis_used, std::move(result)};
}

WOptimum optimize_w(const ProtocolConfig &cfg) {
    const Evaluator evaluator(cfg);
    const double mu_hi = 4.0 * kitagawa_ueda_mu(cfg.n_spins);
    const double two_pi = 2.0 * std::numbers::pi;
    const double pi = std::numbers::pi;
    const double mu_cell = mu_hi / (kWGrid - 1);
    const double nu_cell = two_pi / kWGrid;
    const double axis_cell = pi / kWAxisGrid;

    auto bound_at = [&](double mu_prime, double nu_prime, double axis) {
        const auto pair = evaluator.pair_for(WTwist{mu_prime, nu_prime});
        return bound_at_axis(pair.psi0, pair.psi1, axis, cfg.resolution, cfg.t);
    };

    // Coarse (mu', nu') grid; each cell keeps its best axis from a fixed scan.
    // Cell values only rank seeds, so a single Simpson pass suffices.
    struct Cell {
        double bound = -1.0;
        double axis = 0.0;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(kWGrid * kWGrid));
    parallel_for(cells.size(), cfg.jobs, [&](std::size_t idx) {
        const auto i = static_cast<int>(idx) / kWGrid;
        const auto j = static_cast<int>(idx) % kWGrid;
        const auto pair = evaluator.pair_for(WTwist{i * mu_cell, j * nu_cell});
        Cell best;
        for (int a = 0; a < (cfg.axis ? 1 : kWAxisGrid); ++a) {
            const double axis = cfg.axis ? *cfg.axis : a * axis_cell;
            const double value =
                bound_at_axis(pair.psi0, pair.psi1, axis, cfg.resolution, cfg.t, nullptr, Refinement::SingleGrid);
            if (value > best.bound) {
                best = {value, axis};
            }
        }
        cells[idx] = best;
    });

    // Seeds: the best cells overall plus the best local maxima (nu' periodic,
    // mu' clamped), so that narrow ridges and separate basins both get one.
    auto is_local_max = [&](int i, int j) {
        const double v = cells[static_cast<std::size_t>(i * kWGrid + j)].bound;
        for (int di = -1; di <= 1; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
                const int ni = i + di;
                const int nj = (j + dj + kWGrid) % kWGrid;
                if ((di == 0 && dj == 0) || ni < 0 || ni >= kWGrid) {
                    continue;
                }
                if (cells[static_cast<std::size_t>(ni * kWGrid + nj)].bound > v) {
                    return false;
                }
            }
        }
        return true;
    };
    std::vector<std::size_t> by_value(cells.size());
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        by_value[idx] = idx;
    }
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t a, std::size_t b) { return cells[a].bound > cells[b].bound; });
    std::vector<std::size_t> seeds(by_value.begin(), by_value.begin() + kWTopSeeds);
    int maxima = 0;
    for (std::size_t idx : by_value) {
        if (maxima == kWBasinSeeds) {
            break;
        }
        if (is_local_max(static_cast<int>(idx) / kWGrid, static_cast<int>(idx) % kWGrid)) {
            ++maxima;
            if (std::find(seeds.begin(), seeds.end(), idx) == seeds.end()) {
                seeds.push_back(idx);
            }
        }
    }

    const opt::BatchObjective batch = [&](const std::vector<std::vector<double>> &points) {
        std::vector<double> values(points.size());
        parallel_for(points.size(), cfg.jobs,
                     [&](std::size_t k) { values[k] = -bound_at(points[k][0], points[k][1], points[k][2]); });
        return values;
    };
    const std::vector<opt::Coordinate> coords{
        {0.0, mu_hi, opt::Boundary::Clamp, 0.5 * mu_cell},
        {0.0, two_pi, opt::Boundary::Periodic, 0.5 * nu_cell},
        {0.0, pi, opt::Boundary::Periodic, cfg.axis ? 0.0 : 0.5 * axis_cell},
    };

    // Joint simplex refinement of (mu', nu', axis) from the best few grid cells.
    std::vector<opt::PatternSearchResult> results;
    for (const std::size_t idx : seeds) {
        const std::vector<double> start{static_cast<double>(idx / kWGrid) * mu_cell,
                                        static_cast<double>(idx % kWGrid) * nu_cell, cells[idx].axis};
        results.push_back(
            opt::nelder_mead_minimize(batch, start, batch({start})[0], coords, kWSeedTolerance, kWMaxEvaluations));
    }
    // Restart each distinct result with a fresh simplex; a collapsed simplex
    // on a narrow ridge otherwise stops early.
    std::vector<double> seen;
    for (auto &candidate : results) {
        const bool repeat = std::any_of(seen.begin(), seen.end(), [&](double v) {
            return std::abs(v - candidate.value) <= 1e-9 * std::abs(v);
        });
        seen.push_back(candidate.value);
        if (repeat) {
            continue;
        }
        for (int restart = 0; restart < kWRestarts; ++restart) {
            auto again =
                opt::nelder_mead_minimize(batch, candidate.x, candidate.value, coords, kWTolerance, kWMaxEvaluations);
            if (!(again.value < candidate.value)) {
                break;
            }
            const bool stalled = again.value > candidate.value * (1.0 + 1e-9);
            again.evaluations += candidate.evaluations;
            candidate = std::move(again);
            if (stalled) {
                break;
            }
        }
    }
    const opt::PatternSearchResult refined = *std::min_element(
        results.begin(), results.end(), [](const auto &a, const auto &b) { return a.value < b.value; });

    WOptimum out;
    out.mu_prime = refined.x[0];
    out.nu_prime = refined.x[1];
    const auto pair = evaluator.pair_for(WTwist{out.mu_prime, out.nu_prime});
    out.result = evaluator.measure(pair);
    if (!cfg.axis && -refined.value > out.result.bound) {
        out.result = evaluator.measure_at(pair, refined.x[2]);
    }
    // W = identity is a grid point; keep it if its fully refined axis wins.
    if (const auto identity = evaluator.measure(evaluator.pair_for(WIdentity{})); identity.bound > out.result.bound) {
        out.mu_prime = 0.0;
        out.nu_prime = 0.0;
        out.result = identity;
    }
    out.result.w_params_used = WTwist{out.mu_prime, out.nu_prime};
    return out;
}

namespace {

std::string describe(const DeltaSweepGroup &g, double resolution, const WChoice &w) {
    std::ostringstream os;
    os << "n=" << g.n_spins << " t=" << g.t << " delta=" << resolution << " w=" << w_choice_name(w);
    if (g.mu) {
        os << " mu=" << *g.mu;
    }
    return os.str();
}

}  // namespace

std::vector<DeltaSweepRow> sweep_delta(const DeltaSweepSpec &spec) {
    struct Item {
        std::size_t group;
        std::size_t resolution;
        std::size_t w;
    };
    std::vector<Item> items;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        for (std::size_t d = 0; d < spec.resolutions.size(); ++d) {
            for (std::size_t w = 0; w < spec.w_choices.size(); ++w) {
                items.push_back({g, d, w});
            }
        }
    }

    // Resolve the twisting strength once per group.
    std::vector<double> mus(spec.groups.size());
    parallel_for(mus.size(), spec.jobs, [&](std::size_t g) {
        const auto &group = spec.groups[g];
        mus[g] = group.mu ? *group.mu : optimal_mu(group.n_spins);
    });

    std::vector<DeltaSweepRow> rows(items.size());
    parallel_for(items.size(), spec.jobs, [&](std::size_t i) {
        const auto &item = items[i];
        const auto &group = spec.groups[item.group];
        const double resolution = spec.resolutions[item.resolution];
        const auto &w = spec.w_choices[item.w];
        try {
            ProtocolConfig cfg;
            cfg.n_spins = group.n_spins;
            cfg.mu = mus[item.group];
            cfg.nu = spec.nu;
            cfg.t = group.t;
            cfg.resolution = resolution;
            cfg.w = w;
            const auto r = optimize_axis(cfg).result;
            auto &row = rows[i];
            row.n_spins = group.n_spins;
            row.resolution = resolution;
            row.w_choice = w_choice_name(w);
            row.mu = r.mu_used;
            row.t = group.t;
            row.alpha_star = r.axis_used;
            row.b_omega = r.b_omega;
            row.bound = r.bound;
            row.bound_over_n = r.bound / group.n_spins;
            row.qfi = r.qfi_exact;
            row.qfi_over_n = r.qfi_exact / group.n_spins;
        } catch (const std::exception &e) {
            throw std::runtime_error("sweep-delta row failed (" + describe(group, resolution, w) + "): " + e.what());
        }
    });

    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &ra = rows[a];
        const auto &rb = rows[b];
        if (ra.n_spins != rb.n_spins) {
            return ra.n_spins < rb.n_spins;
        }
        if (ra.resolution != rb.resolution) {
            return ra.resolution < rb.resolution;
        }
        return items[a].w < items[b].w;
    });
    std::vector<DeltaSweepRow> sorted;
    sorted.reserve(rows.size());
    for (auto i : order) {
        sorted.push_back(std::move(rows[i]));
    }
    return sorted;
}

std::vector<MuSweepRow> sweep_mu(const MuSweepSpec &spec) {
    std::vector<double> mus = spec.mus;
    std::sort(mus.begin(), mus.end());
    std::vector<MuSweepRow> rows(mus.size());
    // Row-level parallelism when there are enough rows, otherwise inside the W search.
    const bool per_row = static_cast<int>(mus.size()) >= spec.jobs;
    const int inner_jobs = per_row ? 1 : spec.jobs;
    parallel_for(mus.size(), per_row ? spec.jobs : 1, [&](std::size_t i) {
        try {
            ProtocolConfig cfg;
            cfg.n_spins = spec.n_spins;
            cfg.mu = mus[i];
            cfg.t = spec.t;
            cfg.resolution = spec.resolution;
            cfg.jobs = inner_jobs;
            auto &row = rows[i];
            row.mu = mus[i];
            cfg.w = WIdentity{};
            const auto identity = run_protocol(cfg);
            cfg.nu = identity.nu_used;
            cfg.w = WAdjoint{};
            const auto adjoint = run_protocol(cfg);
            const auto optimized = optimize_w(cfg);
            row.nu = identity.nu_used;
            row.bound_identity = identity.bound;
            row.bound_adjoint = adjoint.bound;
            row.bound_optimized = optimized.result.bound;
            row.qfi = identity.qfi_exact;
            row.mu_prime = optimized.mu_prime;
            row.nu_prime = optimized.nu_prime;
        } catch (const std::exception &e) {
            std::ostringstream os;
            os << "sweep-mu row failed (n=" << spec.n_spins << " mu=" << mus[i] << " delta=" << spec.resolution
               << " t=" << spec.t << "): " << e.what();
            throw std::runtime_error(os.str());
        }
    });
    return rows;
}

}  // namespace qfiw
