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

#ifndef READMIT_NOISE_MODEL_H
#define READMIT_NOISE_MODEL_H

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <variant>

#include "readmit/bitstring.h"
#include "readmit/ctmp_model.h"
#include "readmit/full_noise_matrix.h"
#include "readmit/random.h"
#include "readmit/tp_noise.h"

namespace readmit {

using NoiseModel = std::variant<TPNoise, CTMPModel, FullNoiseMatrix>;

std::size_t num_qubits(const NoiseModel &model);

/// Draws a noisy outcome y from column x of the model's A matrix.
std::uint64_t sample_noisy_word(const TPNoise &model, std::uint64_t x, Rng &rng);
std::uint64_t sample_noisy_word(const NoiseModel &model, std::uint64_t x, Rng &rng);
/// Same, with length checking. Throws std::invalid_argument on mismatch.
BitString sample_noisy(const NoiseModel &model, const BitString &x, Rng &rng);

/// Exact dense A. TP: Kronecker product of the 2x2 factors, qubit 1 most
/// significant. CTMP: exp(G) by scaling and squaring. Requires n <= 12.
FullNoiseMatrix build_full_matrix(const TPNoise &model);
FullNoiseMatrix build_full_matrix(const CTMPModel &model);
FullNoiseMatrix build_full_matrix(const NoiseModel &model);

/// Dense generator G (n <= 12), G(y, x) = rate of x -> y for y != x.
Eigen::MatrixXd generator_matrix(const CTMPModel &model);

/// exp(t * G) for the model's generator, using a sparse G inside a
/// scaling-and-squaring Taylor evaluation with truncation error below 1e-12.
/// t = -1 gives A^{-1}.
Eigen::MatrixXd expm_generator(const CTMPModel &model, double t = 1.0);

/// Exponential of an arbitrary dense matrix by the same scheme; used for the
/// small local generators of calibration.
Eigen::MatrixXd expm_dense(const Eigen::MatrixXd &m);

}  // namespace readmit

#endif  // READMIT_NOISE_MODEL_H
