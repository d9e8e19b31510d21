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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nsit.hpp"
#include "oracles/dense.hpp"

namespace qfiw::nsit {
namespace {

using std::numbers::pi;

// erfc from the all-positive series erf(x) = 2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!,
// summed in extended precision.
long double erfc_series(long double x) {
    long double term = x;
    long double sum = x;
    for (int n = 1; n < 400; ++n) {
        term *= 2.0L * x * x / (2.0L * n + 1.0L);
        sum += term;
        if (term < 1e-30L * sum) {
            break;
        }
    }
    return 1.0L - 2.0L / std::sqrt(std::numbers::pi_v<long double>) * std::exp(-x * x) * sum;
}

double total_variation(const OutcomeDistribution &p, const OutcomeDistribution &q) {
    std::vector<double> diff(p.density.size());
    for (size_t i = 0; i < diff.size(); ++i) {
        diff[i] = 0.5 * std::abs(p.density[i] - q.density[i]);
    }
    return simpson(diff, p.grid.step);
}

TEST(GaussHermite, IntegratesPolynomialsExactly) {
    const auto rule = gauss_hermite(12);
    double total = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        total += rule.weights[i];
        EXPECT_NEAR(rule.nodes[i], -rule.nodes[rule.nodes.size() - 1 - i], 1e-12);
        if (i > 0) {
            EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
        }
    }
    EXPECT_NEAR(total, std::sqrt(pi), 1e-13);
    // int u^{2k} e^{-u^2} = Gamma(k + 1/2); exact up to degree 2n - 1 = 23.
    for (int k = 1; k <= 11; ++k) {
        double s = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            s += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
        }
        EXPECT_NEAR(s / std::tgamma(k + 0.5), 1.0, 1e-11) << "k = " << k;
    }
}

TEST(Kernel, NormalizedWithMatchingVariance) {
    for (double delta : {0.3, 2.0, 7.7}) {
        const auto kernel = DephasingKernel::make(delta);
        double total = 0.0, second = 0.0;
        for (size_t i = 0; i < kernel.nodes.size(); ++i) {
            total += kernel.weights[i];
            second += kernel.weights[i] * kernel.nodes[i] * kernel.nodes[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
        EXPECT_NEAR(second, 1.0 / (4 * delta * delta), 1e-12 / (delta * delta));
    }
    EXPECT_THROW(DephasingKernel::make(0.0), std::invalid_argument);
}

TEST(Undisturbed, NoTwistGivesSmearedBinomial) {
    const int n = 10;
    const auto m = make_measurement(n, pi / 2, 1.5);
    const auto p = undisturbed_statistics(n, 0.0, 0.0, m);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        EXPECT_NEAR(p.weights[k], binom / 1024.0, 1e-13);
        binom = binom * (n - k) / (k + 1);
    }
    EXPECT_NEAR(simpson(p.density, m.grid.step), 1.0, 1e-8);
}

TEST(Undisturbed, RequiresYAxis) {
    EXPECT_THROW(undisturbed_statistics(4, 0.1, 0.2, make_measurement(4, 0.3, 1.0)), std::invalid_argument);
}

TEST(Undisturbed, EqualsProtocolStatisticsWithSecondTwist) {
    const int n = 40;
    const double mu = 0.1, nu = optimal_nu(40, 0.1);
    const auto m = make_measurement(n, pi / 2, std::sqrt(40.0));
    const auto p = undisturbed_statistics(n, mu, nu, m);
    const auto phi0 = one_axis_twist(coherent_state_x(n), mu, nu);
    const auto psi0 = one_axis_twist(phi0, mu, nu);
    const auto ref = outcome_distribution(psi0, m);
    for (size_t i = 0; i < p.density.size(); ++i) {
        EXPECT_NEAR(p.density[i], ref.density[i], 1e-14);
    }
}

TEST(Disturbed, InfiniteResolutionDisturbsNothing) {
    const int n = 20;
    const auto m = make_measurement(n, pi / 2, 2.0);
    const auto p = undisturbed_statistics(n, 0.2, 1.0, m);
    const auto q = disturbed_statistics(n, 0.2, 1.0, DephasingKernel::make(1e7), m);
    EXPECT_LT(total_variation(p, q), 1e-9);
}

TEST(Disturbed, StableUnderNodeDoubling) {
    const int n = 30;
    const double delta = std::sqrt(30.0);
    const auto m = make_measurement(n, pi / 2, delta);
    const auto q41 = disturbed_statistics(n, 0.15, 1.1, DephasingKernel::make(delta, 41), m);
    const auto q81 = disturbed_statistics(n, 0.15, 1.1, DephasingKernel::make(delta, 81), m);
    EXPECT_LT(total_variation(q41, q81), 1e-9);
}

TEST(Disturbed, NsitViolatedForSqueezedState) {
    const int n = 40;
    const double delta = std::sqrt(40.0);
    const double nu = optimal_nu(n, 0.2);
    const auto m = make_measurement(n, pi / 2, delta);
    const auto p = undisturbed_statistics(n, 0.2, nu, m);
    const auto q = disturbed_statistics(n, 0.2, nu, DephasingKernel::make(delta), m);
    EXPECT_LT(bhattacharyya(p, q), 1.0);
    EXPECT_GT(bhattacharyya_overlap(p, q).defect, 1e-8);
}

TEST(NsitBound, BasicProperties) {
    const int n = 16;
    const auto m = make_measurement(n, pi / 2, 4.0);
    const auto p = undisturbed_statistics(n, 0.3, 1.0, m);
    const auto q = disturbed_statistics(n, 0.3, 1.0, DephasingKernel::make(4.0), m);
    EXPECT_EQ(nsit_bound(p, p, 0.125), 0.0);
    const double b = nsit_bound(p, q, 0.125);
    EXPECT_GE(b, 0.0);
    EXPECT_NEAR(nsit_bound(p, q, 0.0625), 4 * b, 1e-12 * b);
    EXPECT_THROW(nsit_bound(p, q, 0.0), std::invalid_argument);
    EXPECT_EQ(default_k_eff(4.0), 0.125);
}

TEST(AveragedFidelity, DephasingLeavesSzEigenstate) {
    Amplitudes e = Amplitudes::Zero(9);
    e[3] = 1.0;
    EXPECT_NEAR(averaged_fidelity(DickeState::from_amplitudes(8, e), DephasingKernel::make(0.5)), 1.0, 1e-14);
}

TEST(AveragedFidelity, InfiniteResolutionKeepsState) {
    EXPECT_NEAR(averaged_fidelity(30, 0.2, 1.0, DephasingKernel::make(1e8)), 1.0, 1e-12);
}

TEST(AveragedFidelity, MatchesDenseUhlmannFidelity) {
    for (int n = 1; n <= 6; ++n) {
        for (double mu : {0.0, 0.3, 1.1}) {
            for (double delta : {0.5, 1.0, std::sqrt(n), 2 * std::sqrt(n)}) {
                const oracle::Vec phi = oracle::one_axis_twist(oracle::coherent_x(n), mu, 0.7);
                // Extended precision keeps the square roots of round-off eigenvalues below 1e-9.
                const oracle::MatL phi_l = phi.cast<std::complex<long double>>();
                const oracle::MatL rho = phi_l * phi_l.adjoint();
                oracle::MatL rho_av = rho;
                for (int a = 0; a <= n; ++a) {
                    for (int b = 0; b <= n; ++b) {
                        rho_av(a, b) *= std::exp(-std::pow(static_cast<long double>(a - b), 2) / (8 * delta * delta));
                    }
                }
                const double expected = oracle::uhlmann(rho, rho_av);
                EXPECT_NEAR(averaged_fidelity(n, mu, 0.7, DephasingKernel::make(delta)), expected, 1e-8)
                    << "N = " << n << ", mu = " << mu << ", delta = " << delta;
            }
        }
    }
}

TEST(Evaluate, ReportsQuadratureDrift) {
    NsitConfig c;
    c.n_spins = 6;
    c.mu = 1.1;
    c.nu = 0.7;
    c.resolution = std::sqrt(6.0);
    EXPECT_LT(evaluate(c).quadrature_drift, 1e-12);
    c.resolution = 0.3;
    EXPECT_GT(evaluate(c).quadrature_drift, 1e-4);
}

TEST(FidelityFloor, Limits) {
    EXPECT_NEAR(dephased_fidelity_floor(1e-8, 10.0), 1.0, 1e-10);
    EXPECT_NEAR(dephased_fidelity_floor(1e12, 0.1), -1.0, 1e-6);
    EXPECT_THROW(dephased_fidelity_floor(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(dephased_fidelity_floor(1.0, 0.0), std::invalid_argument);
}

TEST(FidelityFloor, ShotNoiseResolutionValue) {
    // mpmath: exp(-1/32) - erfc(sqrt(2) pi) with erfc(sqrt(2) pi) = 3.3170528066903608e-10.
    for (int n : {4, 100, 1000}) {
        EXPECT_NEAR(dephased_fidelity_floor(n, std::sqrt(n)), 0.9692332341446388, 1e-14);
    }
}

TEST(FidelityFloor, ErfcAgreesWithSeriesAtTwentyPoints) {
    for (int i = 0; i < 20; ++i) {
        const double delta = 0.05 + 0.3 * i;
        const double qfi = 9.0;
        const double x = std::sqrt(2.0) * pi * delta / 3.0;
        const double expected =
            static_cast<double>(std::exp(-qfi / (32.0L * delta * delta)) - erfc_series(static_cast<long double>(x)));
        EXPECT_NEAR(dephased_fidelity_floor(qfi, delta), expected, 1e-12) << "x = " << x;
    }
}

TEST(FidelityFloor, RespectedAcrossSmallEnsembles) {
    for (int n : {20, 40}) {
        for (double mu : {0.02, 0.1, 0.3, 0.8}) {
            for (double delta : {std::sqrt(n), 2 * std::sqrt(n), double(n)}) {
                NsitConfig cfg;
                cfg.n_spins = n;
                cfg.mu = mu;
                cfg.resolution = delta;
                const auto r = evaluate(cfg);
                EXPECT_GE(r.averaged_fidelity, r.fidelity_floor - 1e-8);
                EXPECT_TRUE(r.floor_respected);
                // Statistics after a common unitary cannot separate states more than fidelity does.
                EXPECT_GE(r.b_pq, r.averaged_fidelity - 1e-9);
            }
        }
    }
}

TEST(Evaluate, StableUnderNodeDoubling) {
    NsitConfig cfg;
    cfg.n_spins = 24;
    cfg.mu = 0.2;
    cfg.resolution = std::sqrt(24.0);
    const auto a = evaluate(cfg);
    cfg.nodes = 81;
    const auto b = evaluate(cfg);
    EXPECT_NEAR(a.averaged_fidelity, b.averaged_fidelity, 1e-9);
    EXPECT_NEAR(a.b_pq, b.b_pq, 1e-9);
    EXPECT_EQ(a.k_eff, 1.0 / (2.0 * std::sqrt(24.0)));
}

}  // namespace
}  // namespace qfiw::nsit
