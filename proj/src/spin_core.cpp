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

#include "spin_core.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "optimize.hpp"

namespace qfiw {

namespace {

constexpr double kNormTolerance = 1e-12;

void require_spins(int n_spins, const char *where) {
    if (n_spins < 1) {
        throw std::invalid_argument(std::string(where) + ": N must be >= 1, got " + std::to_string(n_spins));
    }
}

// exp(-i t H) applied through H = D Q diag(lambda) Q^T D^dagger.
Amplitudes apply_spectral_exp(const SpectralForm &form, const Amplitudes &v, double t) {
    const auto &eig = *form.real;
    Amplitudes w = form.gauge.conjugate().cwiseProduct(v);
    w = linalg::apply_transpose(eig.eigenvectors, w);
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        w[j] *= std::polar(1.0, -t * eig.eigenvalues[j]);
    }
    w = linalg::apply(eig.eigenvectors, w);
    return form.gauge.cwiseProduct(w);
}

Amplitudes s_alpha_gauge(int n_spins, double alpha) {
    Amplitudes gauge(n_spins + 1);
    for (int k = 0; k <= n_spins; ++k) {
        gauge[k] = std::polar(1.0, alpha * k);
    }
    return gauge;
}

double reduce_angle(double angle, double period) {
    double r = std::fmod(angle, period);
    if (r < 0.0) {
        r += period;
    }
    return r;
}

struct SqueezingMoments {
    double var_y = 0.0;
    double var_z = 0.0;
    // Cov(S_y, S_z) with S_y = (S_+ - S_-)/(2i).
    double cov_yz = 0.0;
};

SqueezingMoments squeezing_moments(const DickeState &state) {
    const int n = state.n_spins();
    // operator_s_alpha(pi/2) equals -S_y in the (S_+ - S_-)/(2i) convention.
    const auto s_pi2 = operator_s_alpha(n, std::numbers::pi / 2.0);
    const auto sz = operator_sz(n);
    const Amplitudes &psi = state.amplitudes();
    const Amplitudes y = -s_pi2.apply(psi);
    const Amplitudes z = sz.apply(psi);
    const double ey = psi.dot(y).real();
    const double ez = psi.dot(z).real();
    SqueezingMoments m;
    m.var_y = std::max(0.0, y.squaredNorm() - ey * ey);
    m.var_z = std::max(0.0, z.squaredNorm() - ez * ez);
    m.cov_yz = y.dot(z).real() - ey * ez;
    return m;
}

// Var(S_y) after exp(-i nu S_x), using exp(i nu S_x) S_y exp(-i nu S_x) = cos(nu) S_y - sin(nu) S_z.
double rotated_var_y(const SqueezingMoments &m, double nu) {
    const double c = std::cos(nu);
    const double s = std::sin(nu);
    return c * c * m.var_y + s * s * m.var_z - 2.0 * c * s * m.cov_yz;
}

double min_rotated_var_y(const SqueezingMoments &m) {
    const double mean = 0.5 * (m.var_y + m.var_z);
    const double half_gap = 0.5 * (m.var_y - m.var_z);
    return mean - std::hypot(half_gap, m.cov_yz);
}

}  // namespace

DickeState DickeState::from_amplitudes(int n_spins, Amplitudes amps) {
    require_spins(n_spins, "DickeState");
    if (amps.size() != n_spins + 1) {
        throw DimensionError("DickeState: expected " + std::to_string(n_spins + 1) + " amplitudes, got " +
                                    std::to_string(amps.size()));
    }
    const double norm = amps.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
        throw std::invalid_argument("DickeState: amplitudes are not normalized (norm " + std::to_string(norm) + ")");
    }
    return DickeState(n_spins, std::move(amps));
}

DickeState unitary_image(const DickeState &source, Amplitudes amps) {
    return DickeState(source.n_spins(), std::move(amps));
}

struct TridiagonalSpinOperator::Cache {
    std::once_flag once;
    std::function<SpectralForm()> producer;
    SpectralForm form;
};

TridiagonalSpinOperator::TridiagonalSpinOperator(int n_spins, Eigen::VectorXd diag, Amplitudes offdiag)
    : n_spins_(n_spins), diag_(std::move(diag)), offdiag_(std::move(offdiag)), cache_(std::make_shared<Cache>()) {
    require_spins(n_spins, "TridiagonalSpinOperator");
    if (diag_.size() != n_spins + 1 || offdiag_.size() != n_spins) {
        throw DimensionError("TridiagonalSpinOperator: band lengths must be N+1 and N");
    }
    cache_->producer = [d = diag_, o = offdiag_]() {
        SpectralForm form;
        form.gauge.resize(d.size());
        form.gauge[0] = 1.0;
        std::vector<double> magnitudes(static_cast<std::size_t>(o.size()));
        for (Eigen::Index k = 0; k < o.size(); ++k) {
            const double r = std::abs(o[k]);
            magnitudes[static_cast<std::size_t>(k)] = r;
            form.gauge[k + 1] = r > 0.0 ? form.gauge[k] * (o[k] / r) : form.gauge[k];
        }
        form.real = std::make_shared<const linalg::TridiagonalEigensystem>(
            linalg::decompose_tridiagonal({d.data(), static_cast<std::size_t>(d.size())}, magnitudes));
        return form;
    };
}

Amplitudes TridiagonalSpinOperator::apply(const Amplitudes &v) const {
    if (v.size() != diag_.size()) {
        throw DimensionError("TridiagonalSpinOperator::apply: dimension mismatch");
    }
    Amplitudes out = diag_.cast<Complex>().cwiseProduct(v);
    for (Eigen::Index k = 0; k < offdiag_.size(); ++k) {
        out[k + 1] += offdiag_[k] * v[k];
        out[k] += std::conj(offdiag_[k]) * v[k + 1];
    }
    return out;
}

const SpectralForm &TridiagonalSpinOperator::spectral() const {
    std::call_once(cache_->once, [this] { cache_->form = cache_->producer(); });
    return cache_->form;
}

Generator Generator::s_alpha(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("Generator::s_alpha: non-finite angle");
    }
    return Generator(SAlphaGenerator{reduce_angle(alpha, 2.0 * std::numbers::pi)});
}

TridiagonalSpinOperator Generator::as_operator(int n_spins) const {
    if (std::holds_alternative<SzGenerator>(kind_)) {
        return operator_sz(n_spins);
    }
    if (const auto *sa = std::get_if<SAlphaGenerator>(&kind_)) {
        return operator_s_alpha(n_spins, sa->alpha);
    }
    const auto &op = std::get<TridiagonalSpinOperator>(kind_);
    if (op.n_spins() != n_spins) {
        throw DimensionError("Generator: custom operator acts on a different N");
    }
    return op;
}

DickeState coherent_state_x(int n_spins) {
    require_spins(n_spins, "coherent_state_x");
    Amplitudes amps(n_spins + 1);
    if (n_spins > 300) {
        const double log_norm = 0.5 * n_spins * std::log(2.0);
        const double lg_n = std::lgamma(n_spins + 1.0);
        for (int k = 0; k <= n_spins; ++k) {
            const double log_binom = lg_n - std::lgamma(k + 1.0) - std::lgamma(n_spins - k + 1.0);
            amps[k] = std::exp(0.5 * log_binom - log_norm);
        }
    } else {
        double binom = 1.0;
        const double scale = std::pow(2.0, -0.5 * n_spins);
        for (int k = 0; k <= n_spins; ++k) {
            amps[k] = std::sqrt(binom) * scale;
            binom = binom * (n_spins - k) / (k + 1.0);
        }
    }
    amps /= amps.norm();
    return DickeState::from_amplitudes(n_spins, std::move(amps));
}

double ladder_coefficient(double j, double m) {
    const bool half_integer_j = std::abs(2.0 * j - std::round(2.0 * j)) < 1e-12 && j >= 0.0;
    const double steps = m + j;
    if (!half_integer_j || std::abs(steps - std::round(steps)) > 1e-12 || std::abs(m) > j + 1e-12) {
        throw std::domain_error("ladder_coefficient: m=" + std::to_string(m) + " outside the j=" + std::to_string(j) +
                                " multiplet");
    }
    return std::sqrt(std::max(0.0, j * (j + 1.0) - m * (m + 1.0)));
}

TridiagonalSpinOperator operator_sz(int n_spins) {
    require_spins(n_spins, "operator_sz");
    Eigen::VectorXd diag(n_spins + 1);
    for (int k = 0; k <= n_spins; ++k) {
        diag[k] = k - 0.5 * n_spins;
    }
    return {n_spins, std::move(diag), Amplitudes::Zero(n_spins)};
}

TridiagonalSpinOperator operator_s_alpha(int n_spins, double alpha) {
    require_spins(n_spins, "operator_s_alpha");
    const double j = 0.5 * n_spins;
    const Complex phase = std::polar(0.5, alpha);
    Amplitudes offdiag(n_spins);
    for (int k = 0; k < n_spins; ++k) {
        offdiag[k] = phase * ladder_coefficient(j, k - j);
    }
    TridiagonalSpinOperator op(n_spins, Eigen::VectorXd::Zero(n_spins + 1), std::move(offdiag));
    op.cache_->producer = [n_spins, alpha] { return SpectralForm{s_alpha_gauge(n_spins, alpha), sx_eigensystem(n_spins)}; };
    return op;
}

std::shared_ptr<const linalg::TridiagonalEigensystem> sx_eigensystem(int n_spins) {
    require_spins(n_spins, "sx_eigensystem");
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const linalg::TridiagonalEigensystem>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[n_spins];
    if (!slot) {
        const double j = 0.5 * n_spins;
        std::vector<double> diag(static_cast<std::size_t>(n_spins) + 1, 0.0);
        std::vector<double> off(static_cast<std::size_t>(n_spins));
        for (int k = 0; k < n_spins; ++k) {
            off[static_cast<std::size_t>(k)] = 0.5 * ladder_coefficient(j, k - j);
        }
        slot = std::make_shared<const linalg::TridiagonalEigensystem>(linalg::decompose_tridiagonal(diag, off));
    }
    return slot;
}

DickeState evolve(const DickeState &state, const Generator &generator, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve: non-finite time");
    }
    const int n = state.n_spins();
    const Amplitudes &psi = state.amplitudes();
    if (std::holds_alternative<SzGenerator>(generator.kind())) {
        Amplitudes out(psi.size());
        for (Eigen::Index k = 0; k < psi.size(); ++k) {
            out[k] = psi[k] * std::polar(1.0, -t * state.projection(k));
        }
        return unitary_image(state, std::move(out));
    }
    if (const auto *sa = std::get_if<SAlphaGenerator>(&generator.kind())) {
        const SpectralForm form{s_alpha_gauge(n, sa->alpha), sx_eigensystem(n)};
        return unitary_image(state, apply_spectral_exp(form, psi, t));
    }
    const auto &op = std::get<TridiagonalSpinOperator>(generator.kind());
    if (op.n_spins() != n) {
        throw DimensionError("evolve: generator acts on a different N");
    }
    return unitary_image(state, apply_spectral_exp(op.spectral(), psi, t));
}

DickeState twist(const DickeState &state, double mu) {
    const Amplitudes &psi = state.amplitudes();
    Amplitudes out(psi.size());
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
        const double m = state.projection(k);
        out[k] = psi[k] * std::polar(1.0, -0.5 * mu * m * m);
    }
    return unitary_image(state, std::move(out));
}

DickeState rotate_x(const DickeState &state, double angle) {
    return evolve(state, Generator::s_alpha(0.0), angle);
}

DickeState one_axis_twist(const DickeState &state, double mu, double nu) {
    return rotate_x(twist(state, mu), nu);
}

double optimal_nu(int n_spins, double mu) {
    const auto moments = squeezing_moments(twist(coherent_state_x(n_spins), mu));
    const auto best = opt::periodic_grid_golden_minimize([&](double nu) { return rotated_var_y(moments, nu); }, 0.0,
                                                         std::numbers::pi, 64, 1e-8);
    return best.x;
}

double kitagawa_ueda_mu(int n_spins) {
    require_spins(n_spins, "kitagawa_ueda_mu");
    return std::pow(24.0, 1.0 / 6.0) * std::pow(0.5 * n_spins, -2.0 / 3.0);
}

double optimal_mu(int n_spins) {
    const auto coherent = coherent_state_x(n_spins);
    auto objective = [&](double mu) { return min_rotated_var_y(squeezing_moments(twist(coherent, mu))); };
    const double hi = std::min(std::numbers::pi, 4.0 * kitagawa_ueda_mu(n_spins));
    constexpr int kGrid = 64;
    const double cell = hi / kGrid;
    double best_mu = cell;
    double best_value = objective(cell);
    for (int i = 2; i <= kGrid; ++i) {
        const double v = objective(i * cell);
        if (v < best_value - 1e-12 * std::max(1.0, best_value)) {
            best_mu = i * cell;
            best_value = v;
        }
    }
    const auto refined =
        opt::golden_section_minimize(objective, std::max(0.0, best_mu - cell), std::min(hi, best_mu + cell), 1e-10);
    return refined.value < best_value ? refined.x : best_mu;
}

double expectation(const DickeState &state, const TridiagonalSpinOperator &op) {
    return state.amplitudes().dot(op.apply(state.amplitudes())).real();
}

double variance(const DickeState &state, const TridiagonalSpinOperator &op) {
    const Amplitudes h = op.apply(state.amplitudes());
    const double mean = state.amplitudes().dot(h).real();
    return std::max(0.0, h.squaredNorm() - mean * mean);
}

double qfi_pure(const DickeState &state, const Generator &generator) {
    return 4.0 * variance(state, generator.as_operator(state.n_spins()));
}

double fidelity_pure(const DickeState &a, const DickeState &b) {
    if (a.n_spins() != b.n_spins()) {
        throw DimensionError("fidelity_pure: states live on different N");
    }
    return std::min(1.0, std::abs(a.amplitudes().dot(b.amplitudes())));
}

double bures_distance(double fidelity) {
    if (!(fidelity >= -1e-12 && fidelity <= 1.0 + 1e-12)) {
        throw std::domain_error("bures_distance: fidelity " + std::to_string(fidelity) + " outside [0,1]");
    }
    const double f = std::clamp(fidelity, 0.0, 1.0);
    return std::sqrt(2.0 * (1.0 - f));
}

SpreadMoments heisenberg_spread(int n_spins, double m, double t) {
    require_spins(n_spins, "heisenberg_spread");
    const double k_real = m + 0.5 * n_spins;
    const double k_round = std::round(k_real);
    if (std::abs(k_real - k_round) > 1e-9 || k_round < 0.0 || k_round > n_spins) {
        throw std::domain_error("heisenberg_spread: m=" + std::to_string(m) + " is not an S_x eigenvalue for N=" +
                                std::to_string(n_spins));
    }
    const auto eig = sx_eigensystem(n_spins);
    const auto k = static_cast<Eigen::Index>(k_round);
    if (std::abs(eig->eigenvalues[k] - m) > 1e-9) {
        throw std::runtime_error("heisenberg_spread: S_x spectrum check failed");
    }
    const auto eigenstate = DickeState::from_amplitudes(n_spins, eig->eigenvectors.col(k).cast<Complex>());
    // U^dagger |m> with U = exp(-i S_z t)
    const auto rotated = evolve(eigenstate, Generator::sz(), -t);
    const auto sx = operator_s_alpha(n_spins, 0.0);
    const Amplitudes h = sx.apply(rotated.amplitudes());
    SpreadMoments out;
    out.m1 = rotated.amplitudes().dot(h).real();
    out.m2 = h.squaredNorm();
    out.spread = std::sqrt(std::max(0.0, out.m2 - out.m1 * out.m1));
    return out;
}

}  // namespace qfiw
