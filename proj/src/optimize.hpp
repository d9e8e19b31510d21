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

#include <cstddef>
#include <functional>
#include <vector>

namespace qfiw::opt {

struct ScalarOptimum {
    double x = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi]; stops once the
/// bracket is narrower than `tolerance`.
ScalarOptimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi, double tolerance);

/// Coarse scan of `grid_points` equally spaced points on the half-open
/// interval [lo, hi), followed by golden-section refinement inside the cell
/// pair around the best grid point. The domain is treated as periodic with
/// period hi - lo. Grid values within `tie_tolerance` (relative) of the best
/// are ties and resolve toward the smaller abscissa; the refined point is only
/// kept if it improves on the grid value by more than the tie tolerance.
ScalarOptimum periodic_grid_golden_minimize(const std::function<double(double)> &f, double lo, double hi,
                                            int grid_points, double tolerance, double tie_tolerance = 1e-12);

enum class Boundary { Clamp, Periodic };

struct Coordinate {
    double lo = 0.0;
    double hi = 0.0;
    Boundary boundary = Boundary::Clamp;
    double initial_step = 0.0;
};

struct PatternSearchResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

/// Batch objective: evaluates every point of `points` and returns values in
/// the same order. Lets callers evaluate a poll set concurrently.
using BatchObjective = std::function<std::vector<double>(const std::vector<std::vector<double>> &points)>;

/// Compass (coordinate pattern) search minimizing f from `start`. Each poll
/// evaluates +-step along every coordinate; the best strictly improving poll
/// point is accepted (ties resolve to the earliest poll index), otherwise all
/// steps are halved. Terminates when every step is below `tolerance`.
PatternSearchResult pattern_search_minimize(const BatchObjective &f, std::vector<double> start, double start_value,
                                            const std::vector<Coordinate> &coordinates, double tolerance,
                                            int max_evaluations = 100000);

/// Nelder-Mead simplex minimization from `start`, with the initial simplex
/// spanned by each coordinate's `initial_step`. Clamped coordinates are
/// projected into [lo, hi]; periodic ones are wrapped. Stops when every
/// vertex lies within `tolerance` of the best one in every coordinate, or
/// after `max_evaluations`. Deterministic.
PatternSearchResult nelder_mead_minimize(const BatchObjective &f, std::vector<double> start, double start_value,
                                         const std::vector<Coordinate> &coordinates, double tolerance,
                                         int max_evaluations = 100000);

}  // namespace qfiw::opt
