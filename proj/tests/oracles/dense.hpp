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

// Dense reference implementations used only by the tests. They build full
// (N+1)x(N+1) matrices and share no code with the library.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

inline Mat raising(int n) {
    const double j = 0.5 * n;
    Mat sp = Mat::Zero(n + 1, n + 1);
    for (int k = 0; k < n; ++k) {
        const double m = k - j;
        sp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return sp;
}

inline Mat sz(int n) {
    Mat z = Mat::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        z(k, k) = k - 0.5 * n;
    }
    return z;
}

inline Mat s_alpha(int n, double alpha) {
    const Mat sp = raising(n);
    return 0.5 * (std::polar(1.0, alpha) * sp + std::polar(1.0, -alpha) * sp.adjoint());
}

// exp(A) by scaling and squaring with a degree-24 Taylor polynomial.
inline Mat expm(const Mat &a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (std::ldexp(norm, -squarings) > 0.25) {
        ++squarings;
    }
    const Mat scaled = a / std::ldexp(1.0, squarings);
    Mat result = Mat::Identity(a.rows(), a.cols());
    Mat term = result;
    for (int k = 1; k <= 24; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

inline Vec coherent_x(int n) {
    Vec v(n + 1);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        v[k] = std::sqrt(binom) * std::pow(2.0, -0.5 * n);
        binom = binom * (n - k) / (k + 1);
    }
    return v;
}

inline Vec one_axis_twist(const Vec &psi, double mu, double nu) {
    const int n = static_cast<int>(psi.size()) - 1;
    const Mat z = sz(n);
    return expm(C(0, -nu) * s_alpha(n, 0.0)) * expm(C(0, -0.5 * mu) * z * z) * psi;
}

inline Vec random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vec v(n + 1);
    for (int k = 0; k <= n; ++k) {
        v[k] = C(g(rng), g(rng));
    }
    return v.normalized();
}

using MatL = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

template <class M>
M psd_sqrt(const M &a) {
    Eigen::SelfAdjointEigenSolver<M> es(a);
    using Real = typename M::RealScalar;
    return es.eigenvectors() * es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)).
template <class M>
double uhlmann(const M &rho, const M &sigma) {
    using Real = typename M::RealScalar;
    const M r = psd_sqrt(rho);
    const M inner = r * sigma * r;
    Eigen::SelfAdjointEigenSolver<M> es(Real(0.5) * (inner + inner.adjoint()));
    return static_cast<double>(es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt().sum());
}

}  // namespace oracle
