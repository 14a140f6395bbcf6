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

#ifndef READMIT_CALIBRATION_H
#define READMIT_CALIBRATION_H

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "readmit/ctmp_model.h"
#include "readmit/full_noise_matrix.h"
#include "readmit/noise_model.h"
#include "readmit/tp_noise.h"

namespace readmit {

enum class CalibrationKind {
    Weight1,   // Hamming weights 0, 1 and n
    Weight2,   // Hamming weights 0, 1 and 2
    Hadamard,  // x^a_b = <a, b> mod 2 over p-bit labels, n < 2^p
    Full,      // every basis state
    Custom,
};

std::string_view to_string(CalibrationKind kind);
CalibrationKind parse_calibration_kind(std::string_view text);

/// Ordered set of distinct calibration input states, as packed words.
class CalibrationSet {
   public:
    CalibrationSet(std::size_t n, std::vector<std::uint64_t> inputs, CalibrationKind kind = CalibrationKind::Custom);

    std::size_t num_qubits() const {
        return n_;
    }
    const std::vector<std::uint64_t> &inputs() const {
        return inputs_;
    }
    std::size_t size() const {
        return inputs_.size();
    }
    CalibrationKind kind() const {
        return kind_;
    }

   private:
    std::size_t n_;
    std::vector<std::uint64_t> inputs_;
    CalibrationKind kind_;
};

/// Builds the weight-1, weight-2, Hadamard or full input set. Requires n >= 2
/// (and n <= 12 for the full set).
CalibrationSet make_calibration_set(CalibrationKind kind, std::size_t n);

/// A qubit pair (a < b, 1-based) and bit values that no input covers.
struct UncoveredPattern {
    std::size_t a;
    std::size_t b;
    bool value_a;
    bool value_b;
};

/// First pair/pattern missing from the set, or nullopt if the set is complete.
std::optional<UncoveredPattern> find_uncovered(std::size_t n, const std::vector<std::uint64_t> &inputs);
/// True iff every qubit pair shows all four patterns 00, 01, 10, 11.
bool is_complete(const CalibrationSet &set);

/// Calibration counts m(y, x): for every input x, outcome -> count, with
/// sum_y m(y, x) = n_cal.
class CalibrationData {
   public:
    using Counts = std::map<std::uint64_t, std::uint64_t>;

    CalibrationData(std::size_t n, std::uint64_t n_cal, std::map<std::uint64_t, Counts> records);

    std::size_t num_qubits() const {
        return n_;
    }
    std::uint64_t n_cal() const {
        return n_cal_;
    }
    const std::map<std::uint64_t, Counts> &records() const {
        return records_;
    }
    std::vector<std::uint64_t> inputs() const;

   private:
    std::size_t n_;
    std::uint64_t n_cal_;
    std::map<std::uint64_t, Counts> records_;
};

/// n_cal noisy readouts of every input. Input i draws from stream (seed, i),
/// so the result does not depend on `threads`.
CalibrationData simulate_calibration(const NoiseModel &model, const CalibrationSet &set, std::uint64_t n_cal,
                                     std::uint64_t seed, unsigned threads = 1);

/// A_full(y, x) = m(y, x) / N_cal. Every basis state must be calibrated.
FullNoiseMatrix fit_full(const CalibrationData &data);

/// Marginal 0->1 and 1->0 error frequencies per qubit.
TPNoise fit_tp(const CalibrationData &data);

/// Empirical 4x4 readout matrix on qubits (j, k), conditioned on no errors on
/// the other qubits. Basis order 00, 01, 10, 11 on (x_j, x_k).
struct LocalNoiseMatrix {
    std::size_t j = 0;
    std::size_t k = 0;
    Eigen::Matrix4d a = Eigen::Matrix4d::Identity();
    /// Rounds that entered each column (the denominators).
    Eigen::Vector4d eligible = Eigen::Vector4d::Zero();
};

LocalNoiseMatrix fit_local(const CalibrationData &data, std::size_t j, std::size_t k);

/// Principal matrix logarithm of a local noise matrix.
Eigen::Matrix4d principal_log_4x4(const LocalNoiseMatrix &local);

/// G'(j,k): principal log with negative off-diagonal entries set to zero.
Eigen::Matrix4d clipped_local_generator(const LocalNoiseMatrix &local);

/// Two-qubit rates read from G'(j,k) for every pair; single-qubit rates
/// averaged over the n-1 pairs containing the qubit.
CTMPModel fit_ctmp(const CalibrationData &data);

}  // namespace readmit

#endif  // READMIT_CALIBRATION_H
