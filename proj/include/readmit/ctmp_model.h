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

#ifndef READMIT_CTMP_MODEL_H
#define READMIT_CTMP_MODEL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "readmit/random.h"
#include "readmit/tp_noise.h"

namespace readmit {

/// Bit-flip pattern generated by one CTMP term.
enum class FlipKind {
    ZeroToOne,   // "0->1" on qubit j
    OneToZero,   // "1->0" on qubit j
    Swap01To10,  // "01->10" on ordered pair (j, k): x_j=0, x_k=1 becomes 1, 0
    Raise00To11, // "00->11" on unordered pair {j, k}
    Lower11To00, // "11->00" on unordered pair {j, k}
};

std::string_view to_string(FlipKind kind);
/// Parses "0->1", "1->0", "01->10", "00->11" or "11->00".
FlipKind parse_flip_kind(std::string_view text);
bool is_two_qubit(FlipKind kind);

struct CTMPGeneratorTerm {
    FlipKind kind = FlipKind::ZeroToOne;
    /// 1-based qubits; `second` is 0 for single-qubit kinds.
    std::size_t first = 0;
    std::size_t second = 0;
    double rate = 0;
};

/// A term lowered to word operations: it fires on x when (x & mask) == pattern
/// and maps x to x ^ mask.
struct CompiledTerm {
    std::uint64_t mask;
    std::uint64_t pattern;
    double rate;
};

/// Continuous-time Markov readout noise A = exp(G) with G = sum_i r_i G_i over
/// single- and two-qubit flip generators. Immutable apart from the noise
/// strength cache, which should be filled before the model is shared.
class CTMPModel {
   public:
    CTMPModel() = default;
    /// Validates indices and rates. Pairs for 00->11 and 11->00 are unordered
    /// and stored with first < second; a second term on the same
    /// (kind, qubits) is rejected.
    CTMPModel(std::size_t n, std::vector<CTMPGeneratorTerm> terms);

    /// Embeds tensor-product noise: per qubit, the 2x2 generator whose
    /// exponential is the TP factor (needs eps + eta < 1).
    static CTMPModel from_tp(const TPNoise &tp);

    std::size_t num_qubits() const {
        return n_;
    }
    const std::vector<CTMPGeneratorTerm> &terms() const {
        return terms_;
    }
    /// Terms with non-zero rate, in insertion order.
    const std::vector<CompiledTerm> &compiled() const {
        return compiled_;
    }

    /// R(x) = -<x|G|x>, the total rate of terms whose source pattern matches x.
    double exit_rate(std::uint64_t word) const;
    /// Rate of a given (kind, qubits) term, 0 if absent.
    double rate(FlipKind kind, std::size_t first, std::size_t second = 0) const;

    std::optional<double> cached_gamma() const {
        return gamma_;
    }
    bool gamma_is_exact() const {
        return gamma_exact_;
    }
    void cache_gamma(double gamma, bool exact) {
        gamma_ = gamma;
        gamma_exact_ = exact;
    }

   private:
    std::size_t n_ = 0;
    std::vector<CTMPGeneratorTerm> terms_;
    std::vector<CompiledTerm> compiled_;
    std::optional<double> gamma_;
    bool gamma_exact_ = false;
};

/// Exact forward sample of column x of exp(G): exponential-clock simulation of
/// the Markov process from time 0 to 1.
std::uint64_t ctmp_sample(const CTMPModel &model, std::uint64_t x, Rng &rng);

/// One step of the chain with transition matrix B = I + G / gamma. Throws
/// NumericError if R(x) > gamma, which means gamma is stale or wrong.
std::uint64_t markov_step_B(const CTMPModel &model, double gamma, std::uint64_t x, Rng &rng);

}  // namespace readmit

#endif  // READMIT_CTMP_MODEL_H
