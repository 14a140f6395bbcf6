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

// Random instances shared by the tests.

#ifndef READMIT_TESTS_FIXTURES_H
#define READMIT_TESTS_FIXTURES_H

#include <vector>

#include "readmit/ctmp_model.h"
#include "readmit/random.h"
#include "readmit/tp_noise.h"

namespace fixture {

// Every term kind on every qubit/pair, each present with probability
// `density` and rate uniform in (0, max_rate].
inline readmit::CTMPModel random_ctmp(std::size_t n, double max_rate, readmit::Rng &rng, double density = 0.7) {
    using readmit::FlipKind;
    std::vector<readmit::CTMPGeneratorTerm> terms;
    auto maybe = [&](FlipKind k, std::size_t a, std::size_t b) {
        if (readmit::uniform01(rng) < density) terms.push_back({k, a, b, max_rate * (1 - readmit::uniform01(rng))});
    };
    for (std::size_t j = 1; j <= n; ++j) {
        maybe(FlipKind::ZeroToOne, j, 0);
        maybe(FlipKind::OneToZero, j, 0);
    }
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = 1; k <= n; ++k) {
            if (j == k) continue;
            maybe(FlipKind::Swap01To10, j, k);
            if (j < k) {
                maybe(FlipKind::Raise00To11, j, k);
                maybe(FlipKind::Lower11To00, j, k);
            }
        }
    }
    return readmit::CTMPModel(n, std::move(terms));
}

inline readmit::TPNoise random_tp(std::size_t n, double max_rate, readmit::Rng &rng) {
    std::vector<double> eps(n), eta(n);
    for (std::size_t j = 0; j < n; ++j) {
        eps[j] = max_rate * readmit::uniform01(rng);
        eta[j] = max_rate * readmit::uniform01(rng);
    }
    return readmit::TPNoise(eps, eta);
}

}  // namespace fixture

#endif  // READMIT_TESTS_FIXTURES_H
