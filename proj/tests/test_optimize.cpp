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

#include "optimize.hpp"

namespace qfiw::opt {
namespace {

TEST(Golden, FindsParabolaMinimum) {
    const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, -1.0, 2.0, 1e-9);
    EXPECT_NEAR(r.x, 0.3, 1e-7);
    EXPECT_NEAR(r.value, 2.0, 1e-15);
}

TEST(PeriodicGrid, WrapsAroundTheSeam) {
    const double period = std::numbers::pi;
    auto f = [period](double x) { return -std::cos(2 * (x - 0.02) * std::numbers::pi / period); };
    const auto r = periodic_grid_golden_minimize(f, 0.0, period, 32, 1e-9);
    EXPECT_NEAR(r.x, 0.02, 1e-7);
}

TEST(PeriodicGrid, FlatObjectiveResolvesToLowerEnd) {
    const auto r = periodic_grid_golden_minimize([](double) { return 1.0; }, 0.0, 3.0, 16, 1e-9);
    EXPECT_EQ(r.x, 0.0);
}

TEST(PatternSearch, ConvergesOnQuadratic) {
    BatchObjective f = [](const std::vector<std::vector<double>> &pts) {
        std::vector<double> out;
        for (const auto &p : pts) {
            out.push_back(std::pow(p[0] - 0.7, 2) + 3 * std::pow(p[1] - 1.9, 2));
        }
        return out;
    };
    const std::vector<Coordinate> coords{{0.0, 2.0, Boundary::Clamp, 0.25}, {0.0, 6.0, Boundary::Periodic, 0.25}};
    const auto r = pattern_search_minimize(f, {0.0, 0.0}, f({{0.0, 0.0}})[0], coords, 1e-8);
    EXPECT_NEAR(r.x[0], 0.7, 1e-7);
    EXPECT_NEAR(r.x[1], 1.9, 1e-7);
}

TEST(PatternSearch, RespectsClampedBounds) {
    BatchObjective f = [](const std::vector<std::vector<double>> &pts) {
        std::vector<double> out;
        for (const auto &p : pts) {
            out.push_back(p[0]);
        }
        return out;
    };
    const auto r = pattern_search_minimize(f, {0.5}, 0.5, {{0.0, 1.0, Boundary::Clamp, 0.1}}, 1e-9);
    EXPECT_NEAR(r.x[0], 0.0, 1e-12);
}

TEST(NelderMead, FollowsCurvedValley) {
    BatchObjective f = [](const std::vector<std::vector<double>> &pts) {
        std::vector<double> out;
        for (const auto &p : pts) {
            out.push_back(std::pow(1 - p[0], 2) + 100 * std::pow(p[1] - p[0] * p[0], 2));
        }
        return out;
    };
    const std::vector<Coordinate> coords{{-2.0, 2.0, Boundary::Clamp, 0.3}, {-2.0, 3.0, Boundary::Clamp, 0.3}};
    const auto r = nelder_mead_minimize(f, {-1.2, 1.0}, f({{-1.2, 1.0}})[0], coords, 1e-9);
    EXPECT_NEAR(r.x[0], 1.0, 1e-6);
    EXPECT_NEAR(r.x[1], 1.0, 1e-6);
    EXPECT_LT(r.evaluations, 1000);
}

TEST(NelderMead, WrapsPeriodicAndClampsBoundedCoordinates) {
    const double period = 2 * std::numbers::pi;
    BatchObjective f = [](const std::vector<std::vector<double>> &pts) {
        std::vector<double> out;
        for (const auto &p : pts) {
            out.push_back(-std::cos(p[0] - 0.05) + p[1]);
        }
        return out;
    };
    const std::vector<Coordinate> coords{{0.0, period, Boundary::Periodic, 0.4}, {0.5, 1.0, Boundary::Clamp, 0.1}};
    const auto r = nelder_mead_minimize(f, {period - 0.3, 0.8}, f({{period - 0.3, 0.8}})[0], coords, 1e-9);
    EXPECT_NEAR(r.x[0], 0.05, 1e-6);
    EXPECT_NEAR(r.x[1], 0.5, 1e-12);
    EXPECT_GE(r.x[0], 0.0);
    EXPECT_LT(r.x[0], period);
}

TEST(NelderMead, Deterministic) {
    BatchObjective f = [](const std::vector<std::vector<double>> &pts) {
        std::vector<double> out;
        for (const auto &p : pts) {
            out.push_back(std::sin(3 * p[0]) * std::cos(2 * p[1]) + 0.1 * p[0] * p[0]);
        }
        return out;
    };
    const std::vector<Coordinate> coords{{-3.0, 3.0, Boundary::Clamp, 0.5}, {0.0, 4.0, Boundary::Periodic, 0.5}};
    const auto a = nelder_mead_minimize(f, {0.3, 0.3}, f({{0.3, 0.3}})[0], coords, 1e-8);
    const auto b = nelder_mead_minimize(f, {0.3, 0.3}, f({{0.3, 0.3}})[0], coords, 1e-8);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.value, b.value);
}

}  // namespace
}  // namespace qfiw::opt
