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

#include <span>

#include <Eigen/Dense>

namespace qfiw::linalg {

// Full spectral decomposition of a real symmetric tridiagonal matrix.
// Eigenvalues are ascending; column j of `eigenvectors` belongs to
// eigenvalues[j] and the columns are orthonormal.
struct TridiagonalEigensystem {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

TridiagonalEigensystem decompose_tridiagonal(std::span<const double> diag, std::span<const double> offdiag);

// out = Q^T v and out = Q v for complex v, evaluated as real GEMMs on the
// interleaved (re, im) storage of std::complex.
Eigen::VectorXcd apply_transpose(const Eigen::MatrixXd &q, const Eigen::VectorXcd &v);
Eigen::VectorXcd apply(const Eigen::MatrixXd &q, const Eigen::VectorXcd &v);

}  // namespace qfiw::linalg
