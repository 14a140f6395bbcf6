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

#ifndef READMIT_PIPELINE_H
#define READMIT_PIPELINE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "readmit/mitigation.h"
#include "readmit/noise_model.h"
#include "readmit/stabilizer.h"

namespace readmit {

/// Model handed to the estimator: none (raw mean), TP (product formula, or
/// per-qubit sampling when `tp_sampling`), CTMP (Poisson sampler) or a dense matrix
/// (exact inverse).
struct Mitigator {
    std::variant<std::monostate, TPNoise, CTMPModel, FullNoiseMatrix> model;
    bool tp_sampling = false;
    SamplerOptions sampler;

    MitigationMethod method() const;
};

MitigationResult mitigate(const ShotSet &shots, const DiagonalObservable &obs, const Mitigator &mitigator);

struct StabilizerMean {
    PauliOperator pauli;
    MitigationResult result;
};

struct FidelityEstimate {
    double fidelity = 0;
    double std_err = 0;
    std::vector<StabilizerMean> stabilizers;
};

/// Measures each Pauli in `stabilizers` on M fresh noisy copies of the state
/// prepared by `circuit` and averages the mitigated means, so for a uniform
/// sample of the stabilizer group the result estimates <psi|rho|psi>.
/// Stabilizer k draws its shots from stream (seed, k) and its estimator seed
/// from the same pair, so results do not depend on `threads`.
FidelityEstimate fidelity_estimate(const CliffordCircuit &circuit, const NoiseModel &noise, const Mitigator &mitigator,
                                   const std::vector<PauliOperator> &stabilizers, std::size_t shots,
                                   std::uint64_t seed, unsigned threads = 1);

/// Same, with `num_stabilizers` group elements drawn uniformly from stream
/// (seed, 2^63).
FidelityEstimate fidelity_estimate(const CliffordCircuit &circuit, const NoiseModel &noise, const Mitigator &mitigator,
                                   std::size_t num_stabilizers, std::size_t shots, std::uint64_t seed,
                                   unsigned threads = 1);

/// M noisy computational-basis shots of circuit followed by rotation.
ShotSet sample_noisy_shots(const CliffordCircuit &circuit, const CliffordCircuit &rotation, const NoiseModel &noise,
                           std::size_t shots, Rng &rng);

}  // namespace readmit

#endif  // READMIT_PIPELINE_H
