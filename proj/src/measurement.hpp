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

// Coarse-grained collective measurements: projective statistics along
// S_alpha, Gaussian detector smearing of width Delta on a real-line grid, the
// Bhattacharyya overlap of two outcome distributions and the QFI lower bound
// derived from it.

#include <cstddef>
#include <span>
#include <vector>

#include "spin_core.hpp"

namespace qfiw {

/// Uniform real-line grid x_i = x_min + i * step, i = 0..intervals.
struct Grid {
    double x_min = 0.0;
    double step = 0.0;
    std::size_t intervals = 0;

    double x_max() const { return x_min + step * static_cast<double>(intervals); }
    std::size_t points() const { return intervals + 1; }
    double at(std::size_t i) const { return x_min + step * static_cast<double>(i); }
    Grid refined() const { return {x_min, 0.5 * step, 2 * intervals}; }
};

/// Grid covering [-N/2 - 6 Delta, N/2 + 6 Delta] with a step 1/k, k even,
/// such that step <= min(Delta/5, 0.2). Every spin projection m falls on a
/// grid node and the interval count is even (Simpson-compatible).
Grid spin_grid(int n_spins, double resolution);

struct CoarseGrainedMeasurement {
    double axis = 0.0;
    double resolution = 0.0;
    Grid grid;
};

CoarseGrainedMeasurement make_measurement(int n_spins, double axis, double resolution);

/// |<m|psi>|^2 over the S_alpha eigenbasis, ordered by ascending m.
std::vector<double> projective_weights(const DickeState &state, double alpha);

/// Sum_j weights[j] * N(x; support[j], resolution^2) on the grid nodes.
std::vector<double> smear(std::span<const double> support, std::span<const double> weights, double resolution,
                          const Grid &grid);

/// Projective weights plus, for resolution > 0, the smeared density.
struct OutcomeDistribution {
    std::vector<double> support;
    std::vector<double> weights;
    double resolution = 0.0;
    Grid grid;
    std::vector<double> density;

    bool continuous() const { return resolution > 0.0; }
};

OutcomeDistribution make_outcome(std::vector<double> support, std::vector<double> weights, double resolution,
                                 const Grid &grid);
OutcomeDistribution outcome_distribution(const DickeState &state, const CoarseGrainedMeasurement &measurement);

/// Composite Simpson rule over equally spaced samples (even interval count).
double simpson(std::span<const double> values, double step);

/// Bhattacharyya overlap. `defect` = 1 - coefficient is evaluated directly as
/// (1/2) sum (sqrt(p/P) - sqrt(q/Q))^2 so that it keeps full relative
/// precision when the two distributions nearly coincide. P and Q are the
/// quadrature masses of p and q.
struct Overlap {
    double coefficient = 1.0;
    double defect = 0.0;
    int refinements = 0;
    bool converged = true;
};

enum class Refinement {
    Converged,  // halve the step until |Delta B| < 1e-9
    SingleGrid  // one Simpson pass on the distributions' own grid (screening only)
};

/// Discrete mode sums over eigenvalues; continuous mode integrates with
/// Simpson's rule, refined as requested.
Overlap bhattacharyya_overlap(const OutcomeDistribution &p, const OutcomeDistribution &q,
                              Refinement refinement = Refinement::Converged);
double bhattacharyya(const OutcomeDistribution &p, const OutcomeDistribution &q);

/// (4/t^2) arccos^2 B.
double qfi_lower_bound(double coefficient, double t);
/// Same bound from 1 - B, using arccos(1 - s) = 2 asin(sqrt(s/2)).
double qfi_lower_bound_from_defect(double defect, double t);

struct FidelityBound {
    double value = -1.0;
    bool valid = false;
};

/// cos(sqrt(I) t / 2), valid for |t| <= pi / sqrt(I); -1 with valid=false
/// outside that window.
FidelityBound fidelity_bound(double qfi, double t);

/// Shortest perturbation time for which B + delta < 1 is reachable:
/// 2 arccos(1 - delta) / sqrt(I).
double min_time_for_error(double delta, double qfi);

}  // namespace qfiw
