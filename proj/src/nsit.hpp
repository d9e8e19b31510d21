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

// No-signaling-in-time comparison: statistics of a coarse-grained S_y
// measurement with and without an earlier coarse-grained S_z measurement,
// together with the fidelity floor that ties an NSIT violation to a large
// QFI.
//
// Averaging over the outcomes of the intermediate measurement dephases the
// state as rho_av = int dk g(k) exp(-i k S_z) rho0 exp(i k S_z) with
// g(k) = sqrt(2/pi) Delta exp(-2 Delta^2 k^2). Neither rho_av nor any
// density matrix is ever formed: statistics are linear in the state and the
// fidelity with a pure rho0 reduces to sqrt(<phi0|rho_av|phi0>).

#include <optional>
#include <vector>

#include "measurement.hpp"
#include "spin_core.hpp"

namespace qfiw::nsit {

/// Gauss-Hermite rule for the weight e^{-u^2}: nodes ascending, weights sum
/// to sqrt(pi). Golub-Welsch via the tridiagonal eigensolver.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_hermite(int node_count);

/// Discretization of g(k): nodes k_i and weights g_i with sum g_i = 1.
struct DephasingKernel {
    double resolution = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static DephasingKernel make(double resolution, int node_count = 41);
};

/// Statistics of Omega_y on V V |C>; the measurement axis must be pi/2.
OutcomeDistribution undisturbed_statistics(int n_spins, double mu, double nu,
                                           const CoarseGrainedMeasurement &measurement);

/// Statistics of Omega_y on V rho_av V^dagger with rho0 = V|C><C|V^dagger.
OutcomeDistribution disturbed_statistics(int n_spins, double mu, double nu, const DephasingKernel &kernel,
                                         const CoarseGrainedMeasurement &measurement);

/// (4 / k_eff^2) arccos^2 B(p, q).
double nsit_bound(const OutcomeDistribution &p, const OutcomeDistribution &q, double k_eff);

/// Default effective time: the standard deviation 1/(2 Delta) of g(k).
double default_k_eff(double resolution);

/// F(rho0, rho_av) for rho0 = V|C><C|V^dagger.
double averaged_fidelity(int n_spins, double mu, double nu, const DephasingKernel &kernel);

/// F(rho0, rho_av) for an arbitrary pure rho0.
double averaged_fidelity(const DickeState &prepared, const DephasingKernel &kernel);

/// exp(-I / (32 Delta^2)) - erfc(sqrt(2) pi Delta / sqrt(I)): lower bound on
/// F(rho0, rho_av) for a state with QFI I.
double dephased_fidelity_floor(double qfi, double resolution);

struct NsitConfig {
    int n_spins = 0;
    std::optional<double> mu;  // unset: optimal_mu(N)
    std::optional<double> nu;  // unset: optimal_nu(N, mu)
    double resolution = 0.0;
    int nodes = 41;
    std::optional<double> k_eff;  // unset: default_k_eff(resolution)
};

struct NsitReport {
    double mu = 0.0;
    double nu = 0.0;
    double b_pq = 1.0;
    double nsit_bound = 0.0;
    double k_eff = 0.0;
    double averaged_fidelity = 1.0;
    double qfi = 0.0;
    double fidelity_floor = 0.0;
    bool floor_respected = true;
    // |F(nodes) - F(2 nodes)|; large values mean the rule under-resolves N / Delta.
    double quadrature_drift = 0.0;
};

NsitReport evaluate(const NsitConfig &cfg);

}  // namespace qfiw::nsit
