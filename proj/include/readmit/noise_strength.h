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

#ifndef READMIT_NOISE_STRENGTH_H
#define READMIT_NOISE_STRENGTH_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "readmit/ctmp_model.h"

namespace readmit {

inline constexpr std::size_t kMaxExactGammaQubits = 24;

enum class GammaMethod {
    Auto,       // exact for n <= 24, annealing above
    Exact,
    Annealing,
};

struct AnnealingConfig {
    std::size_t restarts = 8;
    std::size_t sweeps = 20000;
    /// Start/end temperatures as multiples of the largest single-flip change
    /// of R(x); cooling is geometric between them.
    double initial_temperature = 1.0;
    double final_temperature = 1e-4;
    std::uint64_t seed = 0;
};

struct NoiseStrengthOptions {
    GammaMethod method = GammaMethod::Auto;
    AnnealingConfig annealing;
};

struct NoiseStrengthResult {
    double gamma = 0;
    std::uint64_t argmax = 0;
    bool exact = false;
};

/// R(x) = -<x|G|x> written as c + sum_i h_i x_i + sum_{i<j} J_ij x_i x_j over
/// packed bit positions i (position n-j holds qubit j).
struct ExitRateForm {
    std::size_t n = 0;
    double constant = 0;
    std::vector<double> linear;
    std::vector<double> coupling;  // n*n, symmetric, zero diagonal

    double operator()(std::uint64_t word) const;
    double J(std::size_t i, std::size_t j) const {
        return coupling[i * n + j];
    }
};

ExitRateForm exit_rate_form(const CTMPModel &model);

/// gamma = max_x R(x). Exact is Gray-code enumeration (n <= 24); annealing is
/// a lower bound from single-flip simulated annealing with restarts.
NoiseStrengthResult compute_noise_strength(const CTMPModel &model, const NoiseStrengthOptions &options = {});

/// Computes gamma and caches it on the model.
double noise_strength(CTMPModel &model, const NoiseStrengthOptions &options = {});

}  // namespace readmit

#endif  // READMIT_NOISE_STRENGTH_H
