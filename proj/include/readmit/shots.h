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

#ifndef READMIT_SHOTS_H
#define READMIT_SHOTS_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "readmit/bitstring.h"
#include "readmit/observable.h"

namespace readmit {

/// Ordered record of measurement outcomes s^1..s^M on n qubits.
class ShotSet {
   public:
    explicit ShotSet(std::size_t n) : n_(n) {
    }
    ShotSet(std::size_t n, std::vector<std::uint64_t> words);

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t size() const {
        return words_.size();
    }
    bool empty() const {
        return words_.empty();
    }
    BitString operator[](std::size_t i) const {
        return BitString(n_, words_[i]);
    }
    std::span<const std::uint64_t> words() const {
        return words_;
    }

    void push_back(const BitString &s);
    void push_back_word(std::uint64_t w) {
        words_.push_back(w & full_mask(n_));
    }
    /// Outcome -> count.
    std::map<std::uint64_t, std::size_t> histogram() const;

   private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// Empirical mean of O over the shots. Throws std::invalid_argument on an
/// empty set.
double raw_mean(const ShotSet &shots, const DiagonalObservable &obs);
double raw_mean(const ShotSet &shots, const ObservableFn &obs);

/// Sparse probability distribution over n-bit strings.
class ProbVector {
   public:
    /// Entries must be non-negative and sum to 1 within 1e-9.
    ProbVector(std::size_t n, std::map<std::uint64_t, double> entries);
    static ProbVector point(const BitString &x);

    std::size_t num_qubits() const {
        return n_;
    }
    const std::map<std::uint64_t, double> &entries() const {
        return entries_;
    }
    double operator()(std::uint64_t word) const;
    double expectation(const ObservableFn &obs) const;

    /// Draws one outcome by inverse-CDF search over the sorted entries.
    template <typename Rng>
    std::uint64_t sample(Rng &rng) const;

   private:
    std::size_t n_;
    std::map<std::uint64_t, double> entries_;
    std::vector<std::uint64_t> keys_;
    std::vector<double> cdf_;
    std::uint64_t sample_at(double u) const;
};

template <typename Rng>
std::uint64_t ProbVector::sample(Rng &rng) const {
    return sample_at(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

}  // namespace readmit

#endif  // READMIT_SHOTS_H
