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

#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfiw::opt {

ScalarOptimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi, double tolerance) {
    if (!(hi > lo)) {
        throw std::invalid_argument("golden_section_minimize: empty bracket");
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evaluations = 2;
    while (b - a > tolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evaluations;
    }
    if (fc <= fd) {
        return {c, fc, evaluations};
    }
    return {d, fd, evaluations};
}

namespace {

double wrap(double x, double lo, double period) {
    double r = std::fmod(x - lo, period);
    if (r < 0.0) {
        r += period;
    }
    return lo + r;
}

bool improves(double candidate, double reference, double tie_tolerance) {
    return candidate < reference - tie_tolerance * std::max(1.0, std::abs(reference));
}

}  // namespace

ScalarOptimum periodic_grid_golden_minimize(const std::function<double(double)> &f, double lo, double hi,
                                            int grid_points, double tolerance, double tie_tolerance) {
    if (grid_points < 2 || !(hi > lo)) {
        throw std::invalid_argument("periodic_grid_golden_minimize: bad grid");
    }
    const double period = hi - lo;
    const double cell = period / grid_points;

    ScalarOptimum best{lo, f(lo), 1};
    for (int i = 1; i < grid_points; ++i) {
        const double x = lo + i * cell;
        const double v = f(x);
        ++best.evaluations;
        if (improves(v, best.value, tie_tolerance)) {
            best.x = x;
            best.value = v;
        }
    }

    const auto refined = golden_section_minimize([&](double x) { return f(wrap(x, lo, period)); }, best.x - cell,
                                                 best.x + cell, tolerance);
    best.evaluations += refined.evaluations;
    if (improves(refined.value, best.value, tie_tolerance)) {
        best.x = wrap(refined.x, lo, period);
        best.value = refined.value;
    }
    return best;
}

PatternSearchResult pattern_search_minimize(const BatchObjective &f, std::vector<double> start, double start_value,
                                            const std::vector<Coordinate> &coordinates, double tolerance,
                                            int max_evaluations) {
    const std::size_t dim = coordinates.size();
    if (start.size() != dim) {
        throw std::invalid_argument("pattern_search_minimize: start/coordinate dimension mismatch");
    }
    std::vector<double> step(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        step[i] = coordinates[i].initial_step;
    }

    PatternSearchResult state{std::move(start), start_value, 0};
    auto all_below = [&] {
        for (double s : step) {
            if (s >= tolerance) {
                return false;
            }
        }
        return true;
    };

    auto place = [&](std::vector<double> &p) {
        for (std::size_t i = 0; i < dim; ++i) {
            const auto &c = coordinates[i];
            if (c.boundary == Boundary::Periodic) {
                p[i] = wrap(p[i], c.lo, c.hi - c.lo);
            } else if (p[i] < c.lo || p[i] > c.hi) {
                return false;
            }
        }
        return true;
    };

    while (!all_below() && state.evaluations < max_evaluations) {
        std::vector<std::vector<double>> polls;
        std::vector<std::vector<double>> moves;
        for (std::size_t i = 0; i < dim; ++i) {
            if (step[i] < tolerance) {
                continue;
            }
            for (double sign : {1.0, -1.0}) {
                std::vector<double> move(dim, 0.0);
                move[i] = sign * step[i];
                auto p = state.x;
                p[i] += move[i];
                if (!place(p)) {
                    continue;
                }
                polls.push_back(std::move(p));
                moves.push_back(std::move(move));
            }
        }
        if (polls.empty()) {
            break;
        }

        const auto values = f(polls);
        state.evaluations += static_cast<int>(values.size());
        std::size_t winner = polls.size();
        double winner_value = state.value;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (values[k] < winner_value) {
                winner = k;
                winner_value = values[k];
            }
        }
        if (winner == polls.size()) {
            for (double &s : step) {
                s *= 0.5;
            }
            continue;
        }
        state.x = polls[winner];
        state.value = winner_value;

        // Pattern move: keep extrapolating along the accepted direction,
        // doubling the stride while it improves.
        std::vector<double> stride = moves[winner];
        while (state.evaluations < max_evaluations) {
            for (double &d : stride) {
                d *= 2.0;
            }
            auto p = state.x;
            for (std::size_t i = 0; i < dim; ++i) {
                p[i] += stride[i];
            }
            if (!place(p)) {
                break;
            }
            const double value = f({p})[0];
            ++state.evaluations;
            if (!(value < state.value)) {
                break;
            }
            state.x = std::move(p);
            state.value = value;
        }
    }
    return state;
}

PatternSearchResult nelder_mead_minimize(const BatchObjective &f, std::vector<double> start, double start_value,
                                         const std::vector<Coordinate> &coordinates, double tolerance,
                                         int max_evaluations) {
    const std::size_t dim = coordinates.size();
    if (start.size() != dim) {
        throw std::invalid_argument("nelder_mead_minimize: start/coordinate dimension mismatch");
    }
    // Periodic coordinates are kept unwrapped inside the simplex so that
    // centroids stay meaningful; they are wrapped only for evaluation.
    auto project = [&](std::vector<double> p) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (coordinates[i].boundary == Boundary::Clamp) {
                p[i] = std::clamp(p[i], coordinates[i].lo, coordinates[i].hi);
            }
        }
        return p;
    };
    auto wrapped = [&](std::vector<double> p) {
        for (std::size_t i = 0; i < dim; ++i) {
            const auto &c = coordinates[i];
            if (c.boundary == Boundary::Periodic) {
                p[i] = wrap(p[i], c.lo, c.hi - c.lo);
            }
        }
        return p;
    };
    int evaluations = 0;
    auto evaluate = [&](const std::vector<std::vector<double>> &points) {
        std::vector<std::vector<double>> w;
        w.reserve(points.size());
        for (const auto &p : points) {
            w.push_back(wrapped(p));
        }
        evaluations += static_cast<int>(points.size());
        return f(w);
    };

    std::vector<std::vector<double>> simplex{project(start)};
    for (std::size_t i = 0; i < dim; ++i) {
        if (coordinates[i].initial_step <= 0.0) {
            continue;
        }
        auto p = start;
        p[i] += coordinates[i].initial_step;
        if (coordinates[i].boundary == Boundary::Clamp && p[i] > coordinates[i].hi) {
            p[i] = start[i] - coordinates[i].initial_step;
        }
        simplex.push_back(project(p));
    }
    std::vector<double> values{start_value};
    {
        const std::vector<std::vector<double>> rest(simplex.begin() + 1, simplex.end());
        const auto v = evaluate(rest);
        values.insert(values.end(), v.begin(), v.end());
    }
    const std::size_t n = simplex.size() - 1;
    if (n == 0) {
        return {wrapped(simplex[0]), values[0], evaluations};
    }

    std::vector<std::size_t> order(simplex.size());
    auto sort_simplex = [&] {
        for (std::size_t k = 0; k < order.size(); ++k) {
            order[k] = k;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (std::size_t k : order) {
            s2.push_back(simplex[k]);
            v2.push_back(values[k]);
        }
        simplex = std::move(s2);
        values = std::move(v2);
    };
    auto converged = [&] {
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            for (std::size_t i = 0; i < dim; ++i) {
                if (std::abs(simplex[k][i] - simplex[0][i]) >= tolerance) {
                    return false;
                }
            }
        }
        return true;
    };
    auto along = [&](const std::vector<double> &centroid, const std::vector<double> &worst, double coefficient) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            p[i] = centroid[i] + coefficient * (worst[i] - centroid[i]);
        }
        return project(p);
    };

    sort_simplex();
    while (!converged() && evaluations < max_evaluations) {
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < dim; ++i) {
                centroid[i] += simplex[k][i] / static_cast<double>(n);
            }
        }
        const auto &worst = simplex[n];
        const auto reflected = along(centroid, worst, -1.0);
        const double fr = evaluate({reflected})[0];
        if (fr < values[0]) {
            const auto expanded = along(centroid, worst, -2.0);
            const double fe = evaluate({expanded})[0];
            simplex[n] = fe < fr ? expanded : reflected;
            values[n] = std::min(fe, fr);
        } else if (fr < values[n - 1]) {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            const bool outside = fr < values[n];
            const auto contracted = along(centroid, worst, outside ? -0.5 : 0.5);
            const double fc = evaluate({contracted})[0];
            if (fc < (outside ? fr : values[n])) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                std::vector<std::vector<double>> shrunk;
                for (std::size_t k = 1; k <= n; ++k) {
                    for (std::size_t i = 0; i < dim; ++i) {
                        simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
                    }
                    shrunk.push_back(simplex[k]);
                }
                const auto v = evaluate(shrunk);
                for (std::size_t k = 1; k <= n; ++k) {
                    values[k] = v[k - 1];
                }
            }
        }
        sort_simplex();
    }
    return {wrapped(simplex[0]), values[0], evaluations};
}

}  // namespace qfiw::opt
