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

// Single-mode Gaussian optics: squeezed vacuum probed by a displacement
// exp(-i P t) and read out by a coarse-grained X-quadrature detector,
// optionally after a back-squeezing operation with parameter xi'.
// Quadratures are normalized so that the vacuum variance is 1/2.

namespace qfiw::photonic {

struct GaussianQuadratureState {
    double mean_x = 0.0;
    double var_x = 0.5;
    double squeeze = 0.0;
};

/// Squeezed vacuum, optionally displaced along X by `displacement`.
GaussianQuadratureState squeezed_vacuum(double xi, double displacement = 0.0);

/// Measured X variance 1/2 e^{-2 xi} + Delta^2.
double squeezed_variance(double xi, double resolution);

/// 4 Var(P) of the squeezed vacuum, 2 e^{2 xi}.
double photonic_qfi(double xi);

/// Effective detector resolution after back-squeezing, Delta e^{-xi'}.
double back_squeeze_resolution(double resolution, double xi_prime);

/// Bhattacharyya coefficient of two equal-variance Gaussians.
double gaussian_overlap(double separation, double variance);

/// QFI lower bound for the squeezed vacuum displaced by exp(-i P t) (X shifts
/// by t) and measured with resolution Delta after back-squeezing xi'.
double photonic_bound(double xi, double resolution, double xi_prime, double t);

}  // namespace qfiw::photonic
