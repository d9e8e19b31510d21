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

// Prepare / perturb / back-squeeze / measure protocol on a twisted spin
// ensemble:
//   phi0 = V |C>,  psi0 = W phi0,  psi1 = W exp(-i S_z t) phi0,
// with V = exp(-i nu S_x) exp(-i (mu/2) S_z^2). The Bhattacharyya overlap of
// the coarse-grained statistics of psi0 and psi1 yields a lower bound on
// I_phi0(S_z), the QFI of the pre-W state.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "measurement.hpp"
#include "spin_core.hpp"

namespace qfiw {

struct WIdentity {};
struct WAdjoint {};
/// W = exp(-i (mu'/2) S_z^2) exp(-i nu' S_x), mu' >= 0.
struct WTwist {
    double mu_prime = 0.0;
    double nu_prime = 0.0;
};
struct WOptimize {};

using WChoice = std::variant<WIdentity, WAdjoint, WTwist, WOptimize>;

/// "identity", "adjoint", "twist" or "optimize".
std::string w_choice_name(const WChoice &w);

struct ProtocolConfig {
    int n_spins = 0;
    std::optional<double> mu;  // unset: optimal_mu(N)
    std::optional<double> nu;  // unset: optimal_nu(N, mu)
    double t = 0.0;
    double resolution = 0.0;
    WChoice w = WIdentity{};
    std::optional<double> axis;  // unset: optimized over [0, pi)
    int jobs = 1;

    void validate() const;
};

struct BoundResult {
    double b_omega = 1.0;
    double defect = 0.0;  // 1 - b_omega, full relative precision
    double bound = 0.0;
    double qfi_exact = 0.0;
    double mu_used = 0.0;
    double nu_used = 0.0;
    double axis_used = 0.0;
    std::optional<WTwist> w_params_used;
    bool entanglement_witnessed = false;
    bool validity_ok = false;
};

struct PreparedStates {
    DickeState phi0;
    DickeState phi1;
    double mu = 0.0;
    double nu = 0.0;
};

PreparedStates prepare_states(const ProtocolConfig &cfg);

/// Applies a concrete W (identity, adjoint of V(mu, nu), or twist).
DickeState apply_w(const DickeState &state, const WChoice &w, double mu, double nu);

/// Bound from the statistics of psi0 and psi1 along `axis` smeared by
/// `resolution`.
double bound_at_axis(const DickeState &psi0, const DickeState &psi1, double axis, double resolution, double t,
                     Overlap *overlap = nullptr, Refinement refinement = Refinement::Converged);

BoundResult run_protocol(const ProtocolConfig &cfg);

struct AxisOptimum {
    double axis = 0.0;
    BoundResult result;
};

/// Maximizes the bound over the measurement axis: 32-point grid on [0, pi)
/// plus golden-section refinement to 1e-6.
AxisOptimum optimize_axis(const ProtocolConfig &cfg);

struct WOptimum {
    double mu_prime = 0.0;
    double nu_prime = 0.0;
    BoundResult result;
};

/// Maximizes the bound over W = twist(mu', nu') with mu' in [0, 4 mu*],
/// nu' in [0, 2 pi), mu* = optimal_mu(N): 24 x 24 grid, then compass search
/// down to 1e-6 in both parameters. The axis is optimized for every
/// candidate unless cfg.axis is set.
WOptimum optimize_w(const ProtocolConfig &cfg);

struct DeltaSweepGroup {
    int n_spins = 0;
    double t = 0.0;
    std::optional<double> mu;
};

struct DeltaSweepSpec {
    std::vector<DeltaSweepGroup> groups;
    std::vector<double> resolutions;
    std::vector<WChoice> w_choices;
    std::optional<double> nu;
    int jobs = 1;
};

struct DeltaSweepRow {
    int n_spins = 0;
    double resolution = 0.0;
    std::string w_choice;
    double mu = 0.0;
    double t = 0.0;
    double alpha_star = 0.0;
    double b_omega = 0.0;
    double bound = 0.0;
    double bound_over_n = 0.0;
    double qfi = 0.0;
    double qfi_over_n = 0.0;
};

/// Rows ordered by (N, Delta, position in `w_choices`).
std::vector<DeltaSweepRow> sweep_delta(const DeltaSweepSpec &spec);

struct MuSweepSpec {
    int n_spins = 0;
    double resolution = 0.0;
    double t = 0.0;
    std::vector<double> mus;
    int jobs = 1;
};

struct MuSweepRow {
    double mu = 0.0;
    double nu = 0.0;
    double bound_identity = 0.0;
    double bound_adjoint = 0.0;
    double bound_optimized = 0.0;
    double qfi = 0.0;
    double mu_prime = 0.0;
    double nu_prime = 0.0;
};

/// Rows ordered by mu.
std::vector<MuSweepRow> sweep_mu(const MuSweepSpec &spec);

}  // namespace qfiw
