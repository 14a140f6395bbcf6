// Copyright 2026 The Readmit Authors
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

#ifndef READMIT_MATRIX_LOG_H
#define READMIT_MATRIX_LOG_H

#include <Eigen/Dense>

namespace readmit {

/// Imaginary residue above this is treated as a failed real logarithm.
inline constexpr double kLogImagTolerance = 1e-8;

/// Real principal logarithm of a square matrix.
///
/// The identity maps to zero exactly. Otherwise the matrix is diagonalised
/// and the principal branch applied to each eigenvalue; when the eigenvector
/// basis is ill-conditioned (a defective or nearly defective matrix) the
/// Schur-Parlett / inverse scaling-and-squaring logarithm is used instead.
///
/// Throws NumericError for a singular matrix, an eigenvalue on the closed
/// negative real axis, or an imaginary part larger than kLogImagTolerance.
Eigen::MatrixXd principal_log(const Eigen::MatrixXd &a);

}  // namespace readmit

#endif  // READMIT_MATRIX_LOG_H
