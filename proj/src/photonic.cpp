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

#include "photonic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "measurement.hpp"

namespace qfiw::photonic {

namespace {

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("photonic: ") + name + " must be finite");
    }
}

}  // namespace

GaussianQuadratureState squeezed_vacuum(double xi, double displacement) {
    require_finite(xi, "xi");
    require_finite(displacement, "displacement");
    return {displacement, 0.5 * std::exp(-2.0 * xi), xi};
}

double squeezed_variance(double xi, double resolution) {
    require_finite(xi, "xi");
    if (!(resolution >= 0.0) || !std::isfinite(resolution)) {
        throw std::invalid_argument("photonic: delta must be finite and >= 0");
    }
    return 0.5 * std::exp(-2.0 * xi) + resolution * resolution;
}

double photonic_qfi(double xi) {
    require_finite(xi, "xi");
    return 2.0 * std::exp(2.0 * xi);
}

double back_squeeze_resolution(double resolution, double xi_prime) {
    require_finite(xi_prime, "xi_prime");
    return resolution * std::exp(-xi_prime);
}

double gaussian_overlap(double separation, double variance) {
    if (!(variance > 0.0)) {
        throw std::invalid_argument("photonic: variance must be > 0");
    }
    return std::exp(-separation * separation / (8.0 * variance));
}

double photonic_bound(double xi, double resolution, double xi_prime, double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("photonic: t must be finite and > 0");
    }
    // In units of the stretched quadrature e^{-xi'} X: the signal shift stays t
    // while the detector blur shrinks to Delta e^{-xi'}.
    const double variance = squeezed_variance(xi, back_squeeze_resolution(resolution, xi_prime));
    const double defect = -std::expm1(-t * t / (8.0 * variance));
    return qfi_lower_bound_from_defect(defect, t);
}

}  // namespace qfiw::photonic
