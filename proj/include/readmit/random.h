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

#ifndef READMIT_RANDOM_H
#define READMIT_RANDOM_H

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace readmit {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent generator for substream `stream` of a run seeded with `seed`.
/// Streams depend only on (seed, stream), never on which thread consumes them.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Exponential(rate) waiting time; rate > 0.
inline double exponential(Rng &rng, double rate) {
    return -std::log1p(-uniform01(rng)) / rate;
}

inline std::uint64_t uniform_index(Rng &rng, std::uint64_t size) {
    return std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng);
}

/// Runs body(chunk) for chunk in [0, num_chunks) on up to `threads` workers.
/// Each chunk must write only its own output slot; callers reduce the slots
/// in chunk order so the result is independent of the thread count.
void parallel_chunks(std::size_t num_chunks, unsigned threads,
                     const std::function<void(std::size_t)> &body);

}  // namespace readmit

#endif  // READMIT_RANDOM_H
