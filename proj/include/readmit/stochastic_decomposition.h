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

#ifndef READMIT_STOCHASTIC_DECOMPOSITION_H
#define READMIT_STOCHASTIC_DECOMPOSITION_H

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

namespace readmit {

inline constexpr double kColumnSumTolerance = 1e-10;
inline constexpr double kDecompositionZero = 1e-12;
inline constexpr Eigen::Index kMaxDecompositionDim = 256;

/// Common column sum of `m`, or nullopt if the column sums spread by more
/// than 1e-10.
std::optional<double> column_sums_equal(const Eigen::MatrixXd &m);

/// Gamma(M): the largest column 1-norm.
double gamma_of(const Eigen::MatrixXd &m);

/// A deterministic stochastic matrix sum_j |f(j)><j|, stored as f.
struct DeterministicMap {
    std::vector<Eigen::Index> target;

    Eigen::MatrixXd dense() const;
};

/// One greedy reduction step, kept for auditing the construction.
struct DecompositionStep {
    bool zero_sum_case = false;  // column sum was 0 (second case of the construction)
    double omega = 0;
    std::size_t nonzeros_before = 0;
    std::size_t nonzeros_after = 0;
    double gamma_before = 0;
    double gamma_after = 0;
};

/// M = sum_a coeffs[a] * maps[a], each map column-stochastic, with
/// norm = sum_a |coeffs[a]|.
struct StochasticDecomposition {
    std::vector<double> coeffs;
    std::vector<DeterministicMap> maps;
    double norm = 0;
    std::vector<DecompositionStep> steps;

    Eigen::MatrixXd reconstruct() const;
};

/// Greedy construction reaching ||c||_1 = Gamma(M). Each step subtracts
/// omega times a deterministic stochastic matrix, where omega is a
/// smallest-magnitude non-zero entry (with the sign of the column sum when
/// that sum is non-zero) and every other column sends its omega to its
/// largest entry of the same sign. Entries below 1e-12 in magnitude count as
/// zero. Requires equal column sums and dimension <= 256; throws
/// std::invalid_argument otherwise.
StochasticDecomposition decompose_min_norm(const Eigen::MatrixXd &m);

}  // namespace readmit

#endif  // READMIT_STOCHASTIC_DECOMPOSITION_H
