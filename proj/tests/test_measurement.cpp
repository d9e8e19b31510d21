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
#include <random>
#include <stdexcept>

#include "measurement.hpp"
#include "oracles/dense.hpp"

namespace qfiw {
namespace {

using std::numbers::pi;

double normal_pdf(double x, double mean, double sigma) {
    return std::exp(-0.5 * std::pow((x - mean) / sigma, 2)) / (std::sqrt(2 * pi) * sigma);
}

TEST(Grid, CoversSpectrumWithMargin) {
    for (int n : {1, 2, 7, 100, 1000}) {
        for (double delta : {0.05, 0.1, 0.5, 1.0, 3.3, 10.0, 20.0}) {
            const Grid g = spin_grid(n, delta);
            EXPECT_LE(g.x_min, -0.5 * n - 6 * delta + 1e-12);
            EXPECT_GE(g.x_max(), 0.5 * n + 6 * delta - 1e-12);
            EXPECT_LE(g.step, std::min(delta / 5, 0.2) + 1e-15);
            EXPECT_EQ(g.intervals % 2, 0u);
            for (double m : {-0.5 * n, 0.5 * n, 0.5 * n - 1}) {
                const double pos = (m - g.x_min) / g.step;
                EXPECT_NEAR(pos, std::round(pos), 1e-9) << "N = " << n << ", delta = " << delta;
            }
        }
    }
}

TEST(ProjectiveWeights, EigenstateIsDelta) {
    const int n = 6;
    const double alpha = 1.1;
    const auto op = operator_s_alpha(n, alpha);
    const auto &spec = op.spectral();
    const Amplitudes v = spec.gauge.cwiseProduct(spec.real->eigenvectors.col(2).cast<Complex>());
    const auto w = projective_weights(DickeState::from_amplitudes(n, v), alpha);
    for (int k = 0; k <= n; ++k) {
        EXPECT_NEAR(w[k], k == 2 ? 1.0 : 0.0, 1e-13);
    }
}

TEST(ProjectiveWeights, CoherentStateAlongX) {
    const auto w = projective_weights(coherent_state_x(9), 0.0);
    for (int k = 0; k < 9; ++k) {
        EXPECT_NEAR(w[k], 0.0, 1e-13);
    }
    EXPECT_NEAR(w[9], 1.0, 1e-13);
}

TEST(ProjectiveWeights, CoherentStateAlongY) {
    const auto w = projective_weights(coherent_state_x(2), pi / 2);
    EXPECT_NEAR(w[0], 0.25, 1e-14);
    EXPECT_NEAR(w[1], 0.5, 1e-14);
    EXPECT_NEAR(w[2], 0.25, 1e-14);
}

TEST(ProjectiveWeights, MatchDenseEigenbasis) {
    std::mt19937_64 rng(41);
    for (int n : {3, 8}) {
        const auto v = oracle::random_state(n, rng);
        for (double alpha : {0.2, 2.2}) {
            Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::s_alpha(n, alpha));
            const Eigen::VectorXd expected = (es.eigenvectors().adjoint() * v).cwiseAbs2();
            const auto w = projective_weights(DickeState::from_amplitudes(n, v), alpha);
            double total = 0.0;
            for (int k = 0; k <= n; ++k) {
                EXPECT_NEAR(w[k], expected[k], 1e-13);
                total += w[k];
            }
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

TEST(Smear, SinglePointIsStandardNormal) {
    const Grid g = spin_grid(1, 1.0);
    const std::vector<double> support{0.0}, weights{1.0};
    const auto d = smear(support, weights, 1.0, g);
    for (size_t i = 0; i < g.points(); ++i) {
        EXPECT_NEAR(d[i], normal_pdf(g.at(i), 0.0, 1.0), 1e-15);
    }
}

TEST(Smear, EigenstateCentredOnEigenvalue) {
    const Grid g = spin_grid(10, 2.0);
    const std::vector<double> support{-2.0, -1.0, 0.0, 1.0}, weights{0.0, 0.0, 0.0, 1.0};
    const auto d = smear(support, weights, 2.0, g);
    double mean = 0.0, second = 0.0;
    std::vector<double> xm(g.points()), x2(g.points());
    for (size_t i = 0; i < g.points(); ++i) {
        xm[i] = g.at(i) * d[i];
        x2[i] = g.at(i) * g.at(i) * d[i];
    }
    mean = simpson(xm, g.step);
    second = simpson(x2, g.step);
    EXPECT_NEAR(mean, 1.0, 1e-9);
    EXPECT_NEAR(std::sqrt(second - mean * mean), 2.0, 1e-9);
}

TEST(Smear, PreservesNormalization) {
    std::mt19937_64 rng(43);
    for (int n : {4, 25, 120}) {
        for (double delta : {0.1, 0.7, 5.0, 20.0}) {
            const auto s = DickeState::from_amplitudes(n, oracle::random_state(n, rng));
            const auto m = make_measurement(n, 0.9, delta);
            const auto dist = outcome_distribution(s, m);
            EXPECT_NEAR(simpson(dist.density, m.grid.step), 1.0, 1e-8);
            for (double v : dist.density) {
                EXPECT_GE(v, 0.0);
            }
        }
    }
}

TEST(Smear, ThreeAdjacentPointsLookLikeOneWideGaussian) {
    const Grid g = spin_grid(2, 10.0);
    const std::vector<double> support{-1.0, 0.0, 1.0}, weights{1.0 / 3, 1.0 / 3, 1.0 / 3};
    const auto d = smear(support, weights, 10.0, g);
    std::vector<double> diff(g.points());
    for (size_t i = 0; i < g.points(); ++i) {
        diff[i] = 0.5 * std::abs(d[i] - normal_pdf(g.at(i), 0.0, 10.0));
    }
    EXPECT_LT(simpson(diff, g.step), 1e-2);
}

TEST(Smear, OffLatticeSupportUsesDirectSum) {
    Grid g{-8.0, 0.05, 320};
    const std::vector<double> support{0.123, 1.7}, weights{0.25, 0.75};
    const auto d = smear(support, weights, 0.8, g);
    for (size_t i = 0; i < g.points(); i += 17) {
        EXPECT_NEAR(d[i], 0.25 * normal_pdf(g.at(i), 0.123, 0.8) + 0.75 * normal_pdf(g.at(i), 1.7, 0.8), 1e-15);
    }
}

TEST(Smear, RejectsBadResolution) {
    const Grid g = spin_grid(2, 1.0);
    const std::vector<double> support{0.0}, weights{1.0};
    EXPECT_THROW(smear(support, weights, -1.0, g), std::invalid_argument);
    EXPECT_THROW(smear(support, weights, 0.0, g), std::invalid_argument);
    EXPECT_THROW(make_measurement(3, 0.0, -0.5), std::invalid_argument);
}

TEST(Simpson, ExactForCubics) {
    std::vector<double> v(11);
    for (int i = 0; i <= 10; ++i) {
        const double x = 0.3 * i;
        v[i] = x * x * x - 2 * x + 1;
    }
    const double b = 3.0;
    EXPECT_NEAR(simpson(v, 0.3), b * b * b * b / 4 - b * b + b, 1e-12);
    EXPECT_THROW(simpson(std::vector<double>(4, 1.0), 0.1), std::invalid_argument);
    EXPECT_THROW(simpson(std::vector<double>(1, 1.0), 0.1), std::invalid_argument);
}

TEST(Bhattacharyya, IdenticalDistributions) {
    const auto s = one_axis_twist(coherent_state_x(30), 0.1, 0.7);
    for (double delta : {0.0, 1.5}) {
        const auto m = make_measurement(30, 1.0, delta);
        const auto p = outcome_distribution(s, m);
        EXPECT_NEAR(bhattacharyya(p, p), 1.0, 1e-12);
        EXPECT_EQ(bhattacharyya_overlap(p, p).defect, 0.0);
    }
}

TEST(Bhattacharyya, DisjointDiscreteSupport) {
    const Grid g = spin_grid(2, 0.0);
    const std::vector<double> support{-1.0, 0.0, 1.0};
    const auto p = make_outcome(support, {1.0, 0.0, 0.0}, 0.0, g);
    const auto q = make_outcome(support, {0.0, 0.0, 1.0}, 0.0, g);
    EXPECT_EQ(bhattacharyya(p, q), 0.0);
}

TEST(Bhattacharyya, UnitGaussiansWithGap) {
    for (double d : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        Grid g{-12.0, 0.125, 192 + 2 * static_cast<size_t>(std::ceil(d * 8))};
        const auto p = make_outcome({0.0}, {1.0}, 1.0, g);
        const auto q = make_outcome({d}, {1.0}, 1.0, g);
        const auto o = bhattacharyya_overlap(p, q);
        EXPECT_TRUE(o.converged);
        EXPECT_NEAR(o.coefficient, std::exp(-d * d / 8), 1e-9);
        EXPECT_NEAR(o.defect, -std::expm1(-d * d / 8), 1e-10);
    }
}

TEST(Bhattacharyya, MismatchedInputsRejected) {
    const auto s = coherent_state_x(6);
    const auto p = outcome_distribution(s, make_measurement(6, 0.0, 1.0));
    const auto q = outcome_distribution(s, make_measurement(6, 0.0, 2.0));
    EXPECT_THROW(bhattacharyya(p, q), std::invalid_argument);
    const auto r = outcome_distribution(coherent_state_x(7), make_measurement(7, 0.0, 0.0));
    const auto u = outcome_distribution(s, make_measurement(6, 0.0, 0.0));
    EXPECT_THROW(bhattacharyya(r, u), std::invalid_argument);
}

TEST(Bhattacharyya, UpperBoundsStateFidelity) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, pi);
    for (int n : {2, 5, 12, 20}) {
        for (int trial = 0; trial < 6; ++trial) {
            const auto a = DickeState::from_amplitudes(n, oracle::random_state(n, rng));
            const auto b = DickeState::from_amplitudes(n, oracle::random_state(n, rng));
            const double f = fidelity_pure(a, b);
            for (double delta : {0.0, 0.4, 3.0}) {
                const auto m = make_measurement(n, u(rng), delta);
                EXPECT_GE(bhattacharyya(outcome_distribution(a, m), outcome_distribution(b, m)), f - 1e-9);
            }
        }
    }
}

TEST(Bhattacharyya, MonotoneUnderCoarseGraining) {
    const int n = 40;
    const auto phi0 = one_axis_twist(coherent_state_x(n), 0.08, optimal_nu(n, 0.08));
    const auto phi1 = evolve(phi0, Generator::sz(), 0.02);
    double previous = 0.0;
    for (double delta : {0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        const auto m = make_measurement(n, pi / 2, delta);
        const double b = bhattacharyya(outcome_distribution(phi0, m), outcome_distribution(phi1, m));
        EXPECT_GE(b, previous - 1e-12) << "delta = " << delta;
        previous = b;
    }
}

TEST(LowerBound, Examples) {
    EXPECT_EQ(qfi_lower_bound(1.0, 0.3), 0.0);
    EXPECT_NEAR(qfi_lower_bound(0.0, 0.5), pi * pi / 0.25, 1e-12);
    const double t = 1e-3;
    const double b = std::cos(std::sqrt(100.0) * t / 2);
    EXPECT_NEAR(qfi_lower_bound(b, t), 100.0, 1e-6);
    const double half_angle = std::sqrt(250.0) * t / 2;
    EXPECT_NEAR(qfi_lower_bound_from_defect(2 * std::pow(std::sin(half_angle / 2), 2), t), 250.0, 1e-9);
    EXPECT_THROW(qfi_lower_bound(0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(qfi_lower_bound(1.01, 0.1), std::domain_error);
    EXPECT_NO_THROW(qfi_lower_bound(1.0 + 1e-13, 0.1));
}

TEST(LowerBound, DecreasingInCoefficient) {
    double previous = INFINITY;
    for (int i = 0; i <= 100; ++i) {
        const double v = qfi_lower_bound(i / 100.0, 0.2);
        EXPECT_LE(v, previous);
        previous = v;
    }
}

TEST(FidelityBound, Examples) {
    EXPECT_EQ(fidelity_bound(50.0, 0.0).value, 1.0);
    const auto edge = fidelity_bound(100.0, pi / 10);
    EXPECT_TRUE(edge.valid);
    EXPECT_NEAR(edge.value, 0.0, 1e-15);
    const auto outside = fidelity_bound(100.0, 0.4);
    EXPECT_FALSE(outside.valid);
    EXPECT_EQ(outside.value, -1.0);
    EXPECT_THROW(fidelity_bound(-1.0, 0.1), std::domain_error);
}

TEST(FidelityBound, CoherentStateRespectsBound) {
    for (int n : {10, 100, 1000}) {
        for (int i = 0; i <= 20; ++i) {
            const double t = pi / std::sqrt(n) * i / 20.0;
            const auto fb = fidelity_bound(n, t);
            ASSERT_TRUE(fb.valid);
            EXPECT_GE(std::pow(std::cos(t / 2), n), fb.value - 1e-15);
        }
    }
}

TEST(MinTime, Examples) {
    EXPECT_NEAR(min_time_for_error(1e-12, 1e4), 0.0, 1e-7);
    EXPECT_NEAR(min_time_for_error(1.0, 1e4), pi / 100, 1e-15);
    EXPECT_NEAR(min_time_for_error(0.01, 1e4), 2 * std::acos(0.99) / 100, 1e-15);
    EXPECT_NEAR(min_time_for_error(0.01, 1e4), 2.83e-3, 5e-6);
    EXPECT_THROW(min_time_for_error(0.0, 1.0), std::domain_error);
    EXPECT_THROW(min_time_for_error(1.5, 1.0), std::domain_error);
    EXPECT_THROW(min_time_for_error(0.5, 0.0), std::domain_error);
}

}  // namespace
}  // namespace qfiw
