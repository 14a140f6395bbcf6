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

#include "readmit/pipeline.h"

#include <cmath>
#include <stdexcept>

namespace readmit {

MitigationMethod Mitigator::method() const {
    switch (model.index()) {
        case 1:
            return MitigationMethod::TpAlg2;
        case 2:
            return MitigationMethod::CtmpAlg1;
        case 3:
            return MitigationMethod::Exact;
        default:
            return MitigationMethod::Raw;
    }
}

MitigationResult mitigate(const ShotSet &shots, const DiagonalObservable &obs, const Mitigator &mitigator) {
    const ObservableFn fn = [&obs](std::uint64_t w) { return obs(w); };
    if (const auto *tp = std::get_if<TPNoise>(&mitigator.model)) {
        return mitigator.tp_sampling ? mitigate_tp(shots, *tp, fn, mitigator.sampler) : mitigate_tp(shots, *tp, obs);
    }
    if (const auto *ctmp = std::get_if<CTMPModel>(&mitigator.model)) return mitigate_ctmp(shots, *ctmp, fn, mitigator.sampler);
    if (const auto *full = std::get_if<FullNoiseMatrix>(&mitigator.model)) return mitigate_exact(shots, *full, fn);
    return mitigate_raw(shots, fn);
}

ShotSet sample_noisy_shots(const CliffordCircuit &circuit, const CliffordCircuit &rotation, const NoiseModel &noise,
                           std::size_t shots, Rng &rng) {
    if (num_qubits(noise) != circuit.num_qubits()) throw std::invalid_argument("noise model width differs from circuit");
    Tableau t = simulate(circuit);
    t.apply(rotation);
    const StabilizerSampler sampler(t);
    std::vector<std::uint64_t> words(shots);
    for (auto &w : words) w = sample_noisy_word(noise, sampler.sample(rng), rng);
    return ShotSet(circuit.num_qubits(), std::move(words));
}

FidelityEstimate fidelity_estimate(const CliffordCircuit &circuit, const NoiseModel &noise, const Mitigator &mitigator,
                                   const std::vector<PauliOperator> &stabilizers, std::size_t shots,
                                   std::uint64_t seed, unsigned threads) {
    if (stabilizers.empty()) throw std::invalid_argument("fidelity_estimate: no stabilizers");
    if (shots == 0) throw std::invalid_argument("fidelity_estimate: shot count must be positive");
    FidelityEstimate out;
    out.stabilizers.resize(stabilizers.size());
    parallel_chunks(stabilizers.size(), threads, [&](std::size_t k) {
        const auto &p = stabilizers[k];
        Rng rng = make_stream(seed, k);
        const auto setting = pauli_to_measurement(p);
        const ShotSet data = sample_noisy_shots(circuit, setting.rotation, noise, shots, rng);
        Mitigator local = mitigator;
        local.sampler.seed = mix64(seed ^ mix64(k));
        local.sampler.threads = 1;
        out.stabilizers[k] = {p, mitigate(data, setting.observable, local)};
    });
    double sum = 0, var = 0;
    for (const auto &s : out.stabilizers) {
        sum += s.result.xi;
        var += s.result.std_err * s.result.std_err;
    }
    const double k = static_cast<double>(stabilizers.size());
    out.fidelity = sum / k;
    out.std_err = std::sqrt(var) / k;
    return out;
}

FidelityEstimate fidelity_estimate(const CliffordCircuit &circuit, const NoiseModel &noise, const Mitigator &mitigator,
                                   std::size_t num_stabilizers, std::size_t shots, std::uint64_t seed,
                                   unsigned threads) {
    const Tableau t = simulate(circuit);
    Rng rng = make_stream(seed, std::uint64_t{1} << 63);
    std::vector<PauliOperator> picks;
    for (std::size_t i = 0; i < num_stabilizers; ++i) picks.push_back(stabilizer_sample(t, rng));
    return fidelity_estimate(circuit, noise, mitigator, picks, shots, seed, threads);
}

}  // namespace readmit
