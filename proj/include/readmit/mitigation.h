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

#ifndef READMIT_MITIGATION_H
#define READMIT_MITIGATION_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "readmit/ctmp_model.h"
#include "readmit/full_noise_matrix.h"
#include "readmit/observable.h"
#include "readmit/random.h"
#include "readmit/shots.h"
#include "readmit/tp_noise.h"

namespace readmit {

enum class MitigationMethod {
    Raw,
    Exact,
    TpAlg2,
    CtmpAlg1,
};

std::string_view to_string(MitigationMethod method);
/// Accepts the tags "raw", "exact", "tp-alg2", "ctmp-alg1" and the short CLI
/// names "tp" and "ctmp".
MitigationMethod parse_mitigation_method(std::string_view text);

struct MitigationResult {
    double xi = 0;
    double std_err = 0;
    /// T inner samples for the sampling estimators, M shots otherwise.
    std::uint64_t samples_used = 0;
    MitigationMethod method = MitigationMethod::Raw;
    /// CTMP noise strength used by the sampler (0 for other methods).
    double gamma_used = 0;
    /// Quasi-probability norm: Gamma for TP/full, e^{2 gamma} for CTMP.
    double c_norm = 1;
    std::uint64_t seed = 0;
    /// True when the value was produced by inner Monte Carlo sampling.
    bool sampled = false;
};

struct SamplerOptions {
    double delta = 0.01;
    /// Overrides T = ceil(4 delta^-2 ||c||_1^2).
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Overrides the CTMP noise strength. Larger values are valid.
    std::optional<double> gamma;
    /// Safety factor applied to a gamma that came from annealing.
    double annealed_gamma_inflation = 1.05;
    /// Inner samples per RNG stream; part of the reproducibility contract.
    std::uint64_t chunk_size = 1 << 16;
};

struct SamplerPlan {
    double delta = 0;
    std::uint64_t samples = 0;
    double c_norm = 1;
};

/// Gamma = prod_j (1 + |eps_j - eta_j|) / (1 - eps_j - eta_j).
double gamma_tp(const TPNoise &model);

/// M = ceil(4 delta^-2 Gamma^2).
std::uint64_t required_shots(double delta, double gamma);
SamplerPlan plan_samples(double delta, double c_norm);

/// ||c||_1 = e^{2 gamma} of the Poisson-series decomposition of e^{-G}.
double ctmp_c_norm(double gamma);
/// c_alpha = e^gamma (-gamma)^alpha / alpha!.
double ctmp_series_coefficient(double gamma, unsigned alpha);

/// Quasi-probability coefficients c_{j0..3} of one TP factor inverse over the
/// maps b -> b, b -> 1-b, b -> 0, b -> 1.
std::array<double, 4> tp_quasi_coefficients(double eps, double eta);

/// Poisson(mean) draw by sequential inversion; std::poisson_distribution above 30.
unsigned sample_poisson(double mean, Rng &rng);

MitigationResult mitigate_raw(const ShotSet &shots, const ObservableFn &obs);

/// xi = M^-1 sum_i sum_x O(x) <x|A^-1|s^i>, via a linear solve A^T z = O.
/// std_err is the Gamma / sqrt(M) bound; Gamma is exact for n <= 8 and a
/// condition-number estimate above. Throws NumericError if A is singular.
MitigationResult mitigate_exact(const ShotSet &shots, const FullNoiseMatrix &a, const ObservableFn &obs);

/// Product-formula evaluation for a parity observable: deterministic, O(nM).
MitigationResult mitigate_tp(const ShotSet &shots, const TPNoise &model, const DiagonalObservable &obs);
/// Per-qubit quasi-probability sampling for a general observable: T samples.
MitigationResult mitigate_tp(const ShotSet &shots, const TPNoise &model, const ObservableFn &obs,
                             const SamplerOptions &options);

/// The gamma the CTMP sampler will use for `model` under `options`.
double resolve_ctmp_gamma(const CTMPModel &model, const SamplerOptions &options);

/// CTMP sampler: S_alpha = B^alpha, alpha ~ Poisson(gamma). Output is
/// within delta of the exact xi with probability >= 2/3 (Hoeffding), and the
/// exact xi is unbiased for Tr(rho O). gamma == 0 returns the raw mean.
MitigationResult mitigate_ctmp(const ShotSet &shots, const CTMPModel &model, const ObservableFn &obs,
                               const SamplerOptions &options);

struct OverheadReport {
    std::string model_kind;
    /// CTMP noise strength, or sum_j max(eps_j, eta_j) for TP; 0 for full.
    double gamma = 0;
    /// Max column 1-norm of A^-1 when known exactly, else the c_norm bound.
    double Gamma = 1;
    double c_norm = 1;
    /// c_norm^2: the factor by which mitigation multiplies the shot count.
    double overhead = 1;
    double delta = 0;
    std::uint64_t samples = 0;  // T(delta)
    std::uint64_t shots = 0;    // M(delta)
};

OverheadReport overhead_for_gamma(double gamma, double delta);
OverheadReport overhead_report(const TPNoise &model, double delta);
OverheadReport overhead_report(const CTMPModel &model, double delta, const SamplerOptions &options = {});
OverheadReport overhead_report(const FullNoiseMatrix &model, double delta);

}  // namespace readmit

#endif  // READMIT_MITIGATION_H
