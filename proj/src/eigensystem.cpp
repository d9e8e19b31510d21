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

#include "eigensystem.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace qfiw::linalg {

TridiagonalEigensystem decompose_tridiagonal(std::span<const double> diag, std::span<const double> offdiag) {
    const auto n = static_cast<lapack_int>(diag.size());
    if (n == 0) {
        throw std::invalid_argument("decompose_tridiagonal: empty matrix");
    }
    if (offdiag.size() + 1 != diag.size()) {
        throw std::invalid_argument("decompose_tridiagonal: off-diagonal must have length n-1");
    }

    std::vector<double> d(diag.begin(), diag.end());
    // dstevr overwrites e and wants length n storage.
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());

    TridiagonalEigensystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;

    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0,
                                           &found, out.eigenvalues.data(), out.eigenvectors.data(), n,
                                           support.data());
    if (info != 0 || found != n) {
        throw std::runtime_error("decompose_tridiagonal: dstevr failed (info=" + std::to_string(info) + ")");
    }
    return out;
}

namespace {

using Interleaved = Eigen::Matrix<double, 2, Eigen::Dynamic>;

Eigen::Map<const Interleaved> as_rows(const Eigen::VectorXcd &v) {
    return {reinterpret_cast<const double *>(v.data()), 2, v.size()};
}

Eigen::Map<Interleaved> as_rows(Eigen::VectorXcd &v) {
    return {reinterpret_cast<double *>(v.data()), 2, v.size()};
}

}  // namespace

Eigen::VectorXcd apply_transpose(const Eigen::MatrixXd &q, const Eigen::VectorXcd &v) {
    Eigen::VectorXcd out(q.cols());
    as_rows(out).noalias() = as_rows(v) * q;
    return out;
}

Eigen::VectorXcd apply(const Eigen::MatrixXd &q, const Eigen::VectorXcd &v) {
    Eigen::VectorXcd out(q.rows());
    as_rows(out).noalias() = as_rows(v) * q.transpose();
    return out;
}

}  // namespace qfiw::linalg
