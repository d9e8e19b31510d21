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

// Collective spin states and operators in the symmetric (Dicke) subspace of
// N spin-1/2 particles. Basis index k corresponds to the S_z eigenvalue
// m = k - N/2.

#include <complex>
#include <memory>
#include <stdexcept>
#include <variant>

#include <Eigen/Dense>

#include "eigensystem.hpp"

namespace qfiw {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Thrown when vectors or operators of incompatible Hilbert-space size meet.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DickeState {
public:
    /// Validates length N+1 and unit norm (1e-12).
    static DickeState from_amplitudes(int n_spins, Amplitudes amps);

    int n_spins() const { return n_spins_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Amplitudes &amplitudes() const { return amps_; }
    double projection(Eigen::Index k) const { return static_cast<double>(k) - 0.5 * n_spins_; }

private:
    DickeState(int n_spins, Amplitudes amps) : n_spins_(n_spins), amps_(std::move(amps)) {}
    friend DickeState unitary_image(const DickeState &, Amplitudes);

    int n_spins_;
    Amplitudes amps_;
};

/// Wraps the output of a unitary map applied to `source`; no norm check.
DickeState unitary_image(const DickeState &source, Amplitudes amps);

/// Spectral form H = D Q diag(lambda) Q^T D^dagger of a Hermitian tridiagonal
/// operator, where D = diag(gauge) is a diagonal unitary and Q is real.
struct SpectralForm {
    Amplitudes gauge;
    std::shared_ptr<const linalg::TridiagonalEigensystem> real;
};

/// Hermitian tridiagonal collective operator. offdiag[k] = <k+1|H|k>.
class TridiagonalSpinOperator {
public:
    TridiagonalSpinOperator(int n_spins, Eigen::VectorXd diag, Amplitudes offdiag);

    int n_spins() const { return n_spins_; }
    const Eigen::VectorXd &diag() const { return diag_; }
    const Amplitudes &offdiag() const { return offdiag_; }

    Amplitudes apply(const Amplitudes &v) const;

    /// Computed on first use and shared read-only afterwards. Operators built
    /// by operator_s_alpha share the per-N cached S_x decomposition.
    const SpectralForm &spectral() const;

private:
    friend TridiagonalSpinOperator operator_s_alpha(int, double);
    struct Cache;

    int n_spins_;
    Eigen::VectorXd diag_;
    Amplitudes offdiag_;
    std::shared_ptr<Cache> cache_;
};

struct SzGenerator {};
struct SAlphaGenerator {
    double alpha = 0.0;
};

/// Generator H of U = exp(-i H t).
class Generator {
public:
    static Generator sz() { return Generator(SzGenerator{}); }
    /// alpha is reduced into [0, 2pi).
    static Generator s_alpha(double alpha);
    static Generator custom(TridiagonalSpinOperator op) { return Generator(std::move(op)); }

    using Variant = std::variant<SzGenerator, SAlphaGenerator, TridiagonalSpinOperator>;
    const Variant &kind() const { return kind_; }

    /// Materializes the generator as a tridiagonal operator on N spins.
    TridiagonalSpinOperator as_operator(int n_spins) const;

private:
    explicit Generator(Variant v) : kind_(std::move(v)) {}
    Variant kind_;
};

DickeState coherent_state_x(int n_spins);

/// sqrt(j(j+1) - m(m+1)), the S_+ matrix element <m+1|S_+|m>.
double ladder_coefficient(double j, double m);

TridiagonalSpinOperator operator_sz(int n_spins);
TridiagonalSpinOperator operator_s_alpha(int n_spins, double alpha);

/// Shared, lazily computed eigensystem of S_x on N spins.
std::shared_ptr<const linalg::TridiagonalEigensystem> sx_eigensystem(int n_spins);

DickeState evolve(const DickeState &state, const Generator &generator, double t);

/// exp(-i (mu/2) S_z^2)
DickeState twist(const DickeState &state, double mu);
/// exp(-i angle S_x)
DickeState rotate_x(const DickeState &state, double angle);
/// exp(-i nu S_x) exp(-i (mu/2) S_z^2)
DickeState one_axis_twist(const DickeState &state, double mu, double nu);

/// Rotation angle nu in [0, pi) minimizing Var(S_y) of the twisted coherent
/// state; equivalently the rotation that aligns the anti-squeezed direction
/// with z.
double optimal_nu(int n_spins, double mu);

/// Twisting strength minimizing min_nu Var(S_y) (the squeezing optimum),
/// located numerically around the large-N estimate kitagawa_ueda_mu.
double optimal_mu(int n_spins);
/// Asymptotic optimum 24^(1/6) (N/2)^(-2/3).
double kitagawa_ueda_mu(int n_spins);

double expectation(const DickeState &state, const TridiagonalSpinOperator &op);
double variance(const DickeState &state, const TridiagonalSpinOperator &op);

/// Pure-state quantum Fisher information 4 Var(G).
double qfi_pure(const DickeState &state, const Generator &generator);

double fidelity_pure(const DickeState &a, const DickeState &b);
double bures_distance(double fidelity);

struct SpreadMoments {
    double m1 = 0.0;
    double m2 = 0.0;
    double spread = 0.0;
};

/// First and second moments of U S_x U^dagger (U = exp(-i S_z t)) in the S_x
/// eigenstate with eigenvalue m, and their standard deviation.
SpreadMoments heisenberg_spread(int n_spins, double m, double t);

}  // namespace qfiw
