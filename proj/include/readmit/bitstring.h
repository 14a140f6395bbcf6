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

#ifndef READMIT_BITSTRING_H
#define READMIT_BITSTRING_H

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace readmit {

inline constexpr std::size_t kMaxQubits = 64;

/// Mask with the single bit that stores qubit `qubit` (1-based) of an
/// `n`-qubit string. Qubit 1 is the most significant bit, so the packed word
/// equals the binary reading of the '0'/'1' text and doubles as the row or
/// column index of dense 2^n matrices.
constexpr std::uint64_t qubit_mask(std::size_t n, std::size_t qubit) {
    return std::uint64_t{1} << (n - qubit);
}

constexpr std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Fixed-length measurement outcome of up to 64 qubits.
class BitString {
   public:
    BitString() = default;
    /// Builds an `n`-bit string from a packed word (qubit 1 = bit n-1).
    BitString(std::size_t n, std::uint64_t word);
    /// Parses '0'/'1' text, qubit 1 leftmost.
    static BitString parse(std::string_view text);
    static BitString zeros(std::size_t n) {
        return BitString(n, 0);
    }
    static BitString ones(std::size_t n) {
        return BitString(n, full_mask(n));
    }

    std::size_t size() const {
        return n_;
    }
    std::uint64_t word() const {
        return word_;
    }
    /// Value of qubit `qubit` (1-based). Throws std::out_of_range.
    bool at(std::size_t qubit) const;
    BitString flipped(std::size_t qubit) const;
    std::size_t weight() const {
        return static_cast<std::size_t>(std::popcount(word_));
    }
    std::string str() const;

    friend bool operator==(const BitString &, const BitString &) = default;
    friend auto operator<=>(const BitString &, const BitString &) = default;

   private:
    std::size_t n_ = 0;
    std::uint64_t word_ = 0;
};

std::string word_to_string(std::size_t n, std::uint64_t word);

}  // namespace readmit

#endif  // READMIT_BITSTRING_H
