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

#ifndef READMIT_OBSERVABLE_H
#define READMIT_OBSERVABLE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "readmit/bitstring.h"

namespace readmit {

/// Signed parity observable O(x) = sign * (-1)^(sum of x_j over the support).
/// This is the diagonal form of a product of Pauli Z operators and is what a
/// stabilizer measurement reduces to after basis rotation.
class DiagonalObservable {
   public:
    DiagonalObservable() = default;
    /// `support` holds 1-based qubit indices; duplicates are rejected.
    DiagonalObservable(std::size_t n, std::vector<std::size_t> support, int sign = +1);

    std::size_t num_qubits() const {
        return n_;
    }
    const std::vector<std::size_t> &support() const {
        return support_;
    }
    int sign() const {
        return sign_;
    }
    std::uint64_t mask() const {
        return mask_;
    }

    double operator()(std::uint64_t word) const {
        return (std::popcount(word & mask_) & 1) ? -sign_ : sign_;
    }
    double operator()(const BitString &x) const;

    /// Text form, e.g. "+Z1Z3" or "-I" for the constant observable.
    std::string str() const;

   private:
    std::size_t n_ = 0;
    std::vector<std::size_t> support_;
    int sign_ = +1;
    std::uint64_t mask_ = 0;
};

/// A general diagonal observable over packed outcome words. Values must lie in
/// [-1, 1].
using ObservableFn = std::function<double(std::uint64_t)>;

/// O(x) for a parity observable. Throws std::out_of_range when the string is
/// shorter than the observable's largest support index.
double eval_observable(const DiagonalObservable &obs, const BitString &x);

}  // namespace readmit

#endif  // READMIT_OBSERVABLE_H
