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

#include "measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qfiw {

namespace {

// Kernel support in units of Delta; exp(-9^2/2) ~ 2.6e-18 of the peak.
constexpr double kKernelReach = 9.0;
constexpr double kRefinementTolerance = 1e-9;
constexpr int kMaxRefinements = 6;

void require_resolution(double resolution, const char *where) {
    if (!(resolution >= 0.0) || !std::isfinite(resolution)) {
        throw std::invalid_argument(std::string(where) + ": resolution must be finite and >= 0, got " +
                                    std::to_string(resolution));
    }
}

bool same_grid(const Grid &a, const Grid &b) {
    return a.x_min == b.x_min && a.step == b.step && a.intervals == b.intervals;
}

// Lattice offsets (support - x_min)/step when all are integers, else empty.
std::vector<std::ptrdiff_t> lattice_offsets(std::span<const double> support, const Grid &grid) {
    std::vector<std::ptrdiff_t> offsets;
    offsets.reserve(support.size());
    for (double s : support) {
        const double o = (s - grid.x_min) / grid.step;
        const double r = std::round(o);
        if (std::abs(o - r) > 1e-9 * std::max(1.0, std::abs(o))) {
            return {};
        }
        offsets.push_back(static_cast<std::ptrdiff_t>(r));
    }
    return offsets;
}

double normalized_defect_sum(std::span<const double> p, std::span<const double> q, double p_mass, double q_mass,
                             std::vector<double> *terms) {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = std::sqrt(std::max(0.0, p[i]) / p_mass);
        const double b = std::sqrt(std::max(0.0, q[i]) / q_mass);
        const double d = (a - b) * (a - b);
        if (terms != nullptr) {
            (*terms)[i] = d;
        } else {
            sum += d;
        }
    }
    return sum;
}

Overlap continuous_overlap(std::span<const double> p, std::span<const double> q, double step) {
    const double p_mass = simpson(p, step);
    const double q_mass = simpson(q, step);
    if (!(p_mass > 0.0) || !(q_mass > 0.0)) {
        throw std::domain_error("bhattacharyya: density has no mass on the grid");
    }
    std::vector<double> terms(p.size());
    normalized_defect_sum(p, q, p_mass, q_mass, &terms);
    Overlap out;
    out.defect = std::clamp(0.5 * simpson(terms, step), 0.0, 1.0);
    out.coefficient = 1.0 - out.defect;
    return out;
}

}  // namespace

Grid spin_grid(int n_spins, double resolution) {
    require_resolution(resolution, "spin_grid");
    if (n_spins < 1) {
        throw std::invalid_argument("spin_grid: N must be >= 1");
    }
    if (resolution == 0.0) {
        return {-0.5 * n_spins, 1.0, static_cast<std::size_t>(n_spins)};
    }
    auto per_unit = static_cast<std::size_t>(std::max(6.0, std::ceil(5.0 / resolution)));
    per_unit += per_unit % 2;
    const auto margin = static_cast<std::size_t>(std::ceil(6.0 * resolution * static_cast<double>(per_unit)));
    const double step = 1.0 / static_cast<double>(per_unit);
    Grid grid;
    grid.step = step;
    grid.intervals = static_cast<std::size_t>(n_spins) * per_unit + 2 * margin;
    grid.x_min = -0.5 * n_spins - static_cast<double>(margin) * step;
    return grid;
}

CoarseGrainedMeasurement make_measurement(int n_spins, double axis, double resolution) {
    if (!std::isfinite(axis)) {
        throw std::invalid_argument("make_measurement: non-finite axis");
    }
    return {axis, resolution, spin_grid(n_spins, resolution)};
}

std::vector<double> projective_weights(const DickeState &state, double alpha) {
    const int n = state.n_spins();
    const auto eig = sx_eigensystem(n);
    // S_alpha = exp(i alpha S_z) S_x exp(-i alpha S_z): undo the gauge, then project on S_x eigenvectors.
    Amplitudes rotated(state.dim());
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
        rotated[k] = state.amplitudes()[k] * std::polar(1.0, -alpha * static_cast<double>(k));
    }
    const Amplitudes coeffs = linalg::apply_transpose(eig->eigenvectors, rotated);
    std::vector<double> weights(static_cast<std::size_t>(coeffs.size()));
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
        weights[static_cast<std::size_t>(j)] = std::norm(coeffs[j]);
    }
    return weights;
}

std::vector<double> smear(std::span<const double> support, std::span<const double> weights, double resolution,
                          const Grid &grid) {
    require_resolution(resolution, "smear");
    if (resolution == 0.0) {
        throw std::invalid_argument("smear: resolution 0 has no density; use the projective weights");
    }
    if (support.size() != weights.size()) {
        throw DimensionError("smear: support and weights differ in length");
    }
    std::vector<double> density(grid.points(), 0.0);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * resolution);
    const double inv_two_var = 1.0 / (2.0 * resolution * resolution);
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(kKernelReach * resolution / grid.step));
    const auto last = static_cast<std::ptrdiff_t>(grid.intervals);

    const auto offsets = lattice_offsets(support, grid);
    if (!offsets.empty()) {
        std::vector<double> kernel(static_cast<std::size_t>(reach) + 1);
        for (std::ptrdiff_t d = 0; d <= reach; ++d) {
            const double x = static_cast<double>(d) * grid.step;
            kernel[static_cast<std::size_t>(d)] = norm * std::exp(-x * x * inv_two_var);
        }
        for (std::size_t j = 0; j < support.size(); ++j) {
            const double w = weights[j];
            if (w == 0.0) {
                continue;
            }
            const std::ptrdiff_t centre = offsets[j];
            const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, centre - reach);
            const std::ptrdiff_t hi = std::min(last, centre + reach);
            double *out = density.data() + centre;
            const double *k = kernel.data();
            for (std::ptrdiff_t d = lo - centre; d < 0; ++d) {
                out[d] += w * k[-d];
            }
            for (std::ptrdiff_t d = 0; d <= hi - centre; ++d) {
                out[d] += w * k[d];
            }
        }
        return density;
    }

    for (std::size_t j = 0; j < support.size(); ++j) {
        const double w = weights[j];
        if (w == 0.0) {
            continue;
        }
        const double centre = (support[j] - grid.x_min) / grid.step;
        const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor(centre)) - reach);
        const auto hi = std::min(last, static_cast<std::ptrdiff_t>(std::ceil(centre)) + reach);
        for (std::ptrdiff_t i = lo; i <= hi; ++i) {
            const double x = grid.at(static_cast<std::size_t>(i)) - support[j];
            density[static_cast<std::size_t>(i)] += w * norm * std::exp(-x * x * inv_two_var);
        }
    }
    return density;
}

OutcomeDistribution make_outcome(std::vector<double> support, std::vector<double> weights, double resolution,
                                 const Grid &grid) {
    require_resolution(resolution, "make_outcome");
    if (support.size() != weights.size()) {
        throw DimensionError("make_outcome: support and weights differ in length");
    }
    OutcomeDistribution out;
    out.support = std::move(support);
    out.weights = std::move(weights);
    out.resolution = resolution;
    out.grid = grid;
    if (resolution > 0.0) {
        out.density = smear(out.support, out.weights, resolution, grid);
    }
    return out;
}

OutcomeDistribution outcome_distribution(const DickeState &state, const CoarseGrainedMeasurement &measurement) {
    std::vector<double> support(static_cast<std::size_t>(state.dim()));
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
        support[static_cast<std::size_t>(k)] = state.projection(k);
    }
    return make_outcome(std::move(support), projective_weights(state, measurement.axis), measurement.resolution,
                        measurement.grid);
}

double simpson(std::span<const double> values, double step) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("simpson: need an even number (>= 2) of intervals");
    }
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        (i % 2 == 1 ? odd : even) += values[i];
    }
    return step / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

Overlap bhattacharyya_overlap(const OutcomeDistribution &p, const OutcomeDistribution &q, Refinement refinement) {
    if (p.resolution != q.resolution) {
        throw std::invalid_argument("bhattacharyya: distributions use different resolutions");
    }
    if (!p.continuous()) {
        if (p.weights.size() != q.weights.size() || p.support != q.support) {
            throw std::invalid_argument("bhattacharyya: distributions have different eigenvalue supports");
        }
        double p_mass = 0.0;
        double q_mass = 0.0;
        for (std::size_t i = 0; i < p.weights.size(); ++i) {
            p_mass += p.weights[i];
            q_mass += q.weights[i];
        }
        if (!(p_mass > 0.0) || !(q_mass > 0.0)) {
            throw std::domain_error("bhattacharyya: empty distribution");
        }
        Overlap out;
        out.defect = std::clamp(0.5 * normalized_defect_sum(p.weights, q.weights, p_mass, q_mass, nullptr), 0.0, 1.0);
        out.coefficient = 1.0 - out.defect;
        return out;
    }

    if (!same_grid(p.grid, q.grid) || p.density.size() != p.grid.points() || q.density.size() != q.grid.points()) {
        throw std::invalid_argument("bhattacharyya: distributions are sampled on different grids");
    }
    Overlap current = continuous_overlap(p.density, q.density, p.grid.step);
    if (refinement == Refinement::SingleGrid) {
        current.converged = false;
        return current;
    }
    Grid grid = p.grid;
    for (int level = 1; level <= kMaxRefinements; ++level) {
        grid = grid.refined();
        const auto dp = smear(p.support, p.weights, p.resolution, grid);
        const auto dq = smear(q.support, q.weights, q.resolution, grid);
        Overlap finer = continuous_overlap(dp, dq, grid.step);
        finer.refinements = level;
        if (std::abs(finer.coefficient - current.coefficient) < kRefinementTolerance) {
            return finer;
        }
        current = finer;
    }
    current.converged = false;
    return current;
}

double bhattacharyya(const OutcomeDistribution &p, const OutcomeDistribution &q) {
    return bhattacharyya_overlap(p, q).coefficient;
}

namespace {

void require_time(double t, const char *where) {
    if (t == 0.0 || !std::isfinite(t)) {
        throw std::invalid_argument(std::string(where) + ": t must be finite and nonzero");
    }
}

}  // namespace

double qfi_lower_bound(double coefficient, double t) {
    require_time(t, "qfi_lower_bound");
    if (!(coefficient >= -1e-12 && coefficient <= 1.0 + 1e-12)) {
        throw std::domain_error("qfi_lower_bound: coefficient " + std::to_string(coefficient) + " outside [0,1]");
    }
    const double angle = std::acos(std::clamp(coefficient, 0.0, 1.0));
    return 4.0 * angle * angle / (t * t);
}

double qfi_lower_bound_from_defect(double defect, double t) {
    require_time(t, "qfi_lower_bound_from_defect");
    if (!(defect >= -1e-12 && defect <= 1.0 + 1e-12)) {
        throw std::domain_error("qfi_lower_bound_from_defect: defect " + std::to_string(defect) + " outside [0,1]");
    }
    const double angle = 2.0 * std::asin(std::sqrt(0.5 * std::clamp(defect, 0.0, 1.0)));
    return 4.0 * angle * angle / (t * t);
}

FidelityBound fidelity_bound(double qfi, double t) {
    if (!(qfi >= 0.0) || !std::isfinite(qfi)) {
        throw std::domain_error("fidelity_bound: QFI must be finite and >= 0");
    }
    if (!std::isfinite(t)) {
        throw std::invalid_argument("fidelity_bound: non-finite t");
    }
    const double phase = std::sqrt(qfi) * std::abs(t);
    if (phase > std::numbers::pi * (1.0 + 1e-12)) {
        return {-1.0, false};
    }
    return {std::cos(0.5 * std::min(phase, std::numbers::pi)), true};
}

double min_time_for_error(double delta, double qfi) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::domain_error("min_time_for_error: delta must lie in (0, 1]");
    }
    if (!(qfi > 0.0) || !std::isfinite(qfi)) {
        throw std::domain_error("min_time_for_error: QFI must be positive");
    }
    return 2.0 * std::acos(1.0 - delta) / std::sqrt(qfi);
}

}  // namespace qfiw
