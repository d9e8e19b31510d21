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

#include "nsit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eigensystem.hpp"

namespace qfiw::nsit {

namespace {

void require_resolution(double resolution) {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
        throw std::invalid_argument("nsit: delta must be finite and > 0");
    }
}

void require_y_axis(const CoarseGrainedMeasurement &measurement) {
    if (std::abs(measurement.axis - std::numbers::pi / 2.0) > 1e-12) {
        throw std::invalid_argument("nsit: the final measurement must be along y (axis pi/2)");
    }
}

std::vector<double> support_of(const DickeState &state) {
    std::vector<double> support(static_cast<std::size_t>(state.dim()));
    for (Eigen::Index k = 0; k < state.dim(); ++k) {
        support[static_cast<std::size_t>(k)] = state.projection(k);
    }
    return support;
}

}  // namespace

QuadratureRule gauss_hermite(int node_count) {
    if (node_count < 1) {
        throw std::invalid_argument("gauss_hermite: need at least one node");
    }
    const auto n = static_cast<std::size_t>(node_count);
    std::vector<double> diag(n, 0.0);
    std::vector<double> off(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        off[i - 1] = std::sqrt(0.5 * static_cast<double>(i));
    }
    const auto eig = linalg::decompose_tridiagonal(diag, off);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double total = std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        const double v0 = eig.eigenvectors(0, static_cast<Eigen::Index>(i));
        rule.nodes[i] = eig.eigenvalues[static_cast<Eigen::Index>(i)];
        rule.weights[i] = total * v0 * v0;
    }
    return rule;
}

DephasingKernel DephasingKernel::make(double resolution, int node_count) {
    require_resolution(resolution);
    const auto rule = gauss_hermite(node_count);
    DephasingKernel kernel;
    kernel.resolution = resolution;
    // u = sqrt(2) Delta k turns g(k) dk into e^{-u^2} du / sqrt(pi).
    const double scale = 1.0 / (std::sqrt(2.0) * resolution);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        kernel.nodes.push_back(rule.nodes[i] * scale);
        kernel.weights.push_back(rule.weights[i] * inv_sqrt_pi);
    }
    return kernel;
}

OutcomeDistribution undisturbed_statistics(int n_spins, double mu, double nu,
                                           const CoarseGrainedMeasurement &measurement) {
    require_y_axis(measurement);
    const auto prepared = one_axis_twist(coherent_state_x(n_spins), mu, nu);
    return outcome_distribution(one_axis_twist(prepared, mu, nu), measurement);
}

OutcomeDistribution disturbed_statistics(int n_spins, double mu, double nu, const DephasingKernel &kernel,
                                         const CoarseGrainedMeasurement &measurement) {
    require_y_axis(measurement);
    const auto prepared = one_axis_twist(coherent_state_x(n_spins), mu, nu);
    std::vector<double> mixed(static_cast<std::size_t>(prepared.dim()), 0.0);
    for (std::size_t i = 0; i < kernel.nodes.size(); ++i) {
        const auto branch = one_axis_twist(evolve(prepared, Generator::sz(), kernel.nodes[i]), mu, nu);
        const auto w = projective_weights(branch, measurement.axis);
        for (std::size_t m = 0; m < w.size(); ++m) {
            mixed[m] += kernel.weights[i] * w[m];
        }
    }
    return make_outcome(support_of(prepared), std::move(mixed), measurement.resolution, measurement.grid);
}

double default_k_eff(double resolution) {
    require_resolution(resolution);
    return 1.0 / (2.0 * resolution);
}

double nsit_bound(const OutcomeDistribution &p, const OutcomeDistribution &q, double k_eff) {
    if (k_eff == 0.0 || !std::isfinite(k_eff)) {
        throw std::invalid_argument("nsit_bound: k_eff must be finite and nonzero");
    }
    return qfi_lower_bound_from_defect(bhattacharyya_overlap(p, q).defect, k_eff);
}

double averaged_fidelity(const DickeState &prepared, const DephasingKernel &kernel) {
    double overlap = 0.0;
    for (std::size_t i = 0; i < kernel.nodes.size(); ++i) {
        Complex c = 0.0;
        for (Eigen::Index k = 0; k < prepared.dim(); ++k) {
            c += std::norm(prepared.amplitudes()[k]) * std::polar(1.0, -kernel.nodes[i] * prepared.projection(k));
        }
        overlap += kernel.weights[i] * std::norm(c);
    }
    return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

double averaged_fidelity(int n_spins, double mu, double nu, const DephasingKernel &kernel) {
    return averaged_fidelity(one_axis_twist(coherent_state_x(n_spins), mu, nu), kernel);
}

double dephased_fidelity_floor(double qfi, double resolution) {
    if (!(qfi > 0.0) || !std::isfinite(qfi)) {
        throw std::invalid_argument("dephased_fidelity_floor: QFI must be finite and > 0");
    }
    require_resolution(resolution);
    return std::exp(-qfi / (32.0 * resolution * resolution)) -
           std::erfc(std::sqrt(2.0) * std::numbers::pi * resolution / std::sqrt(qfi));
}

NsitReport evaluate(const NsitConfig &cfg) {
    if (cfg.n_spins < 1) {
        throw std::invalid_argument("nsit: n must be >= 1");
    }
    require_resolution(cfg.resolution);
    NsitReport report;
    report.mu = cfg.mu ? *cfg.mu : optimal_mu(cfg.n_spins);
    report.nu = cfg.nu ? *cfg.nu : optimal_nu(cfg.n_spins, report.mu);
    report.k_eff = cfg.k_eff ? *cfg.k_eff : default_k_eff(cfg.resolution);

    const auto kernel = DephasingKernel::make(cfg.resolution, cfg.nodes);
    const auto measurement = make_measurement(cfg.n_spins, std::numbers::pi / 2.0, cfg.resolution);
    const auto p = undisturbed_statistics(cfg.n_spins, report.mu, report.nu, measurement);
    const auto q = disturbed_statistics(cfg.n_spins, report.mu, report.nu, kernel, measurement);
    const auto overlap = bhattacharyya_overlap(p, q);
    report.b_pq = overlap.coefficient;
    report.nsit_bound = qfi_lower_bound_from_defect(overlap.defect, report.k_eff);
    const auto prepared = one_axis_twist(coherent_state_x(cfg.n_spins), report.mu, report.nu);
    report.averaged_fidelity = averaged_fidelity(prepared, kernel);
    report.quadrature_drift = std::abs(
        report.averaged_fidelity - averaged_fidelity(prepared, DephasingKernel::make(cfg.resolution, 2 * cfg.nodes)));
    report.qfi = qfi_pure(prepared, Generator::sz());
    report.fidelity_floor = report.qfi > 0.0 ? dephased_fidelity_floor(report.qfi, cfg.resolution) : 1.0;
    report.floor_respected = report.averaged_fidelity >= report.fidelity_floor - 1e-8;
    return report;
}

}  // namespace qfiw::nsit
