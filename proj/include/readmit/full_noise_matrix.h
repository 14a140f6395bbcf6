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

#ifndef READMIT_FULL_NOISE_MATRIX_H
#define READMIT_FULL_NOISE_MATRIX_H

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>

#include "readmit/random.h"

namespace readmit {

inline constexpr std::size_t kMaxDenseQubits = 12;

/// Dense column-stochastic 2^n x 2^n readout matrix, a(y, x) = P(read y | x).
/// Row and column indices are packed outcome words.
class FullNoiseMatrix {
   public:
    FullNoiseMatrix() = default;
    /// Checks entries in [0, 1] (tiny negative rounding within 1e-12 is
    /// clamped to 0) and column sums 1 within 1e-9.
    FullNoiseMatrix(std::size_t n, Eigen::MatrixXd a);

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(a_.rows());
    }
    const Eigen::MatrixXd &matrix() const {
        return a_;
    }
    double operator()(std::uint64_t y, std::uint64_t x) const {
        return a_(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
    }

    std::uint64_t sample(std::uint64_t x, Rng &rng) const;

   private:
    std::size_t n_ = 0;
    Eigen::MatrixXd a_;
};

/// TVD(A, A') = 1/2 max_x sum_y |A(y,x) - A'(y,x)|.
double tvd(const FullNoiseMatrix &a, const FullNoiseMatrix &b);

}  // namespace readmit

#endif  // READMIT_FULL_NOISE_MATRIX_H
