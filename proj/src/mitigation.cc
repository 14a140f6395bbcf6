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

#include "readmit/mitigation.h"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "readmit/error.h"
#include "readmit/noise_strength.h"
#include "readmit/stochastic_decomposition.h"

namespace readmit {

namespace {

constexpr std::size_t kExplicitInverseQubits = 8;

struct Moments {
    double sum = 0;
    double sum_sq = 0;
};

void require_shots(const ShotSet &shots, const char *who) {
    if (shots.empty()) throw std::invalid_argument(std::string(who) + ": empty shot set");
}

double std_error(const Moments &m, std::uint64_t count) {
    if (count < 2) return 0.0;
    const double mean = m.sum / static_cast<double>(count);
    const double var = std::max(0.0, (m.sum_sq - m.sum * mean) / static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
}

// Runs `draw` T times split into fixed-size chunks, each with its own stream,
// and sums the results in chunk order.
template <class Draw>
Moments run_chunked(std::uint64_t total, const SamplerOptions &options, Draw draw) {
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t num_chunks = (total + chunk - 1) / chunk;
    std::vector<Moments> parts(num_chunks);
    parallel_chunks(num_chunks, std::max(1u, options.threads), [&](std::size_t c) {
        Rng rng = make_stream(options.seed, c);
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        Moments m;
        for (std::uint64_t t = begin; t < end; ++t) {
            const double v = draw(rng);
            m.sum += v;
            m.sum_sq += v * v;
        }
        parts[c] = m;
    });
    Moments out;
    for (const auto &m : parts) {
        out.sum += m.sum;
        out.sum_sq += m.sum_sq;
    }
    return out;
}

std::uint64_t inner_samples(const SamplerOptions &options, double c_norm) {
    if (options.samples) {
        if (*options.samples == 0) throw std::invalid_argument("sample count must be positive");
        return *options.samples;
    }
    return plan_samples(options.delta, c_norm).samples;
}

}  // namespace

std::string_view to_string(MitigationMethod method) {
    switch (method) {
        case MitigationMethod::Raw:
            return "raw";
        case MitigationMethod::Exact:
            return "exact";
        case MitigationMethod::TpAlg2:
            return "tp-alg2";
        case MitigationMethod::CtmpAlg1:
            return "ctmp-alg1";
    }
    return "raw";
}

MitigationMethod parse_mitigation_method(std::string_view text) {
    if (text == "raw") return MitigationMethod::Raw;
    if (text == "exact") return MitigationMethod::Exact;
    if (text == "tp" || text == "tp-alg2") return MitigationMethod::TpAlg2;
    if (text == "ctmp" || text == "ctmp-alg1") return MitigationMethod::CtmpAlg1;
    throw std::invalid_argument("unknown mitigation method '" + std::string(text) + "'");
}

double gamma_tp(const TPNoise &model) {
    double g = 1.0;
    for (std::size_t q = 1; q <= model.num_qubits(); ++q) {
        const double e = model.eps(q), h = model.eta(q);
        const double det = 1.0 - e - h;
        if (!(det > 0)) throw NumericError("gamma_tp: singular factor on qubit " + std::to_string(q));
        g *= (1.0 + std::abs(e - h)) / det;
    }
    return g;
}

std::uint64_t required_shots(double delta, double gamma) {
    if (!(delta > 0)) throw std::invalid_argument("required_shots: delta must be positive");
    const double m = 4.0 * gamma * gamma / (delta * delta);
    // Absorb the last-ulp error of the division so exact integers stay put.
    return static_cast<std::uint64_t>(std::ceil(m * (1.0 - 4 * std::numeric_limits<double>::epsilon())));
}

SamplerPlan plan_samples(double delta, double c_norm) {
    return SamplerPlan{delta, required_shots(delta, c_norm), c_norm};
}

double ctmp_c_norm(double gamma) {
    return std::exp(2.0 * gamma);
}

double ctmp_series_coefficient(double gamma, unsigned alpha) {
    double c = std::exp(gamma);
    for (unsigned k = 1; k <= alpha; ++k) c *= -gamma / k;
    return c;
}

std::array<double, 4> tp_quasi_coefficients(double eps, double eta) {
    const double det = 1.0 - eps - eta;
    if (!(det > 0)) throw NumericError("singular readout factor: eps + eta >= 1");
    return {(2.0 - eps - eta) / (2 * det), -(eps + eta) / (2 * det), (eps - eta) / (2 * det), (eta - eps) / (2 * det)};
}

unsigned sample_poisson(double mean, Rng &rng) {
    if (!(mean >= 0)) throw std::invalid_argument("sample_poisson: negative mean");
    if (mean == 0) return 0;
    if (mean > 30) return std::poisson_distribution<unsigned>(mean)(rng);
    const double u = uniform01(rng);
    double p = std::exp(-mean);
    double cdf = p;
    unsigned k = 0;
    while (u >= cdf && k < 1000) {
        ++k;
        p *= mean / k;
        cdf += p;
    }
    return k;
}

MitigationResult mitigate_raw(const ShotSet &shots, const ObservableFn &obs) {
    require_shots(shots, "mitigate_raw");
    Moments m;
    for (auto w : shots.words()) {
        const double v = obs(w);
        m.sum += v;
        m.sum_sq += v * v;
    }
    MitigationResult r;
    r.samples_used = shots.size();
    r.xi = m.sum / static_cast<double>(shots.size());
    r.std_err = std_error(m, shots.size());
    r.method = MitigationMethod::Raw;
    return r;
}

MitigationResult mitigate_exact(const ShotSet &shots, const FullNoiseMatrix &a, const ObservableFn &obs) {
    require_shots(shots, "mitigate_exact");
    const std::size_t n = a.num_qubits();
    if (shots.num_qubits() != n) throw std::invalid_argument("mitigate_exact: shot width does not match the model");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXd o(dim);
    for (Eigen::Index x = 0; x < dim; ++x) o(x) = obs(static_cast<std::uint64_t>(x));

    const Eigen::MatrixXd at = a.matrix().transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(at);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) throw NumericError("mitigate_exact: noise matrix is singular (rcond " + std::to_string(rcond) + ")");
    const Eigen::VectorXd z = lu.solve(o);
    const double residual = (at * z - o).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10 * std::max(1.0, z.cwiseAbs().maxCoeff()))) {
        throw NumericError("mitigate_exact: solve residual " + std::to_string(residual));
    }

    // z(s) = sum_x O(x) <x|A^-1|s>, the per-shot mitigated value.
    Moments m;
    for (auto w : shots.words()) {
        const double v = z(static_cast<Eigen::Index>(w));
        m.sum += v;
        m.sum_sq += v * v;
    }
    double big_gamma;
    if (n <= kExplicitInverseQubits) {
        big_gamma = gamma_of(lu.inverse().transpose());
    } else {
        // ||A||_1 = 1 for stochastic A, so ||A^-1||_1 = cond_1(A) ~ 1/rcond.
        big_gamma = 1.0 / rcond;
    }
    MitigationResult r;
    r.samples_used = shots.size();
    r.xi = m.sum / static_cast<double>(shots.size());
    r.std_err = big_gamma / std::sqrt(static_cast<double>(shots.size()));
    r.method = MitigationMethod::Exact;
    r.c_norm = big_gamma;
    return r;
}

MitigationResult mitigate_tp(const ShotSet &shots, const TPNoise &model, const DiagonalObservable &obs) {
    require_shots(shots, "mitigate_tp");
    const std::size_t n = model.num_qubits();
    if (shots.num_qubits() != n || obs.num_qubits() > n) {
        throw std::invalid_argument("mitigate_tp: shot, model and observable widths differ");
    }
    // Per support qubit: sum_e (-1)^e <e|A_j^-1|b> for b = 0 and b = 1.
    std::vector<std::uint64_t> masks;
    std::vector<double> on_zero, on_one;
    for (std::size_t q : obs.support()) {
        const double e = model.eps(q), h = model.eta(q);
        const double det = 1.0 - e - h;
        if (!(det > 0)) throw NumericError("mitigate_tp: singular factor on qubit " + std::to_string(q));
        masks.push_back(qubit_mask(n, q));
        on_zero.push_back((1.0 - h + e) / det);
        on_one.push_back(-(1.0 + h - e) / det);
    }
    Moments m;
    for (auto w : shots.words()) {
        double v = obs.sign();
        for (std::size_t k = 0; k < masks.size(); ++k) v *= (w & masks[k]) ? on_one[k] : on_zero[k];
        m.sum += v;
        m.sum_sq += v * v;
    }
    MitigationResult r;
    r.samples_used = shots.size();
    r.xi = m.sum / static_cast<double>(shots.size());
    r.std_err = std_error(m, shots.size());
    r.method = MitigationMethod::TpAlg2;
    r.c_norm = gamma_tp(model);
    return r;
}

MitigationResult mitigate_tp(const ShotSet &shots, const TPNoise &model, const ObservableFn &obs,
                             const SamplerOptions &options) {
    require_shots(shots, "mitigate_tp");
    const std::size_t n = model.num_qubits();
    if (shots.num_qubits() != n) throw std::invalid_argument("mitigate_tp: shot width does not match the model");

    // Qubits whose inverse factor is the identity never need a draw.
    struct Factor {
        std::uint64_t mask;
        std::array<double, 4> cdf;
        std::array<double, 4> sign;
    };
    std::vector<Factor> factors;
    double big_gamma = 1.0;
    for (std::size_t q = 1; q <= n; ++q) {
        const auto c = tp_quasi_coefficients(model.eps(q), model.eta(q));
        const double norm = std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]);
        big_gamma *= norm;
        if (c[1] == 0 && c[2] == 0 && c[3] == 0) continue;
        Factor f{qubit_mask(n, q), {}, {}};
        double acc = 0;
        for (int k = 0; k < 4; ++k) {
            acc += std::abs(c[k]) / norm;
            f.cdf[k] = acc;
            f.sign[k] = c[k] < 0 ? -1.0 : 1.0;
        }
        f.cdf[3] = 1.0;
        factors.push_back(f);
    }

    const std::uint64_t total = inner_samples(options, big_gamma);
    const auto words = shots.words();
    const Moments m = run_chunked(total, options, [&](Rng &rng) {
        std::uint64_t x = words[uniform_index(rng, words.size())];
        double sign = 1.0;
        for (const auto &f : factors) {
            const double u = uniform01(rng);
            int alpha = 0;
            while (alpha < 3 && u >= f.cdf[alpha]) ++alpha;
            switch (alpha) {
                case 1:
                    x ^= f.mask;
                    break;
                case 2:
                    x &= ~f.mask;
                    break;
                case 3:
                    x |= f.mask;
                    break;
                default:
                    break;
            }
            sign *= f.sign[alpha];
        }
        return sign * obs(x);
    });

    MitigationResult r;
    r.samples_used = total;
    r.xi = big_gamma * m.sum / static_cast<double>(total);
    r.std_err = big_gamma * std_error(m, total);
    r.method = MitigationMethod::TpAlg2;
    r.c_norm = big_gamma;
    r.seed = options.seed;
    r.sampled = true;
    return r;
}

double resolve_ctmp_gamma(const CTMPModel &model, const SamplerOptions &options) {
    if (options.gamma) {
        if (!(*options.gamma >= 0)) throw std::invalid_argument("gamma override must be non-negative");
        return *options.gamma;
    }
    double gamma;
    bool exact;
    if (auto cached = model.cached_gamma()) {
        gamma = *cached;
        exact = model.gamma_is_exact();
    } else {
        NoiseStrengthOptions ns;
        ns.annealing.seed = options.seed;
        const auto res = compute_noise_strength(model, ns);
        gamma = res.gamma;
        exact = res.exact;
    }
    return exact ? gamma : gamma * options.annealed_gamma_inflation;
}

MitigationResult mitigate_ctmp(const ShotSet &shots, const CTMPModel &model, const ObservableFn &obs,
                               const SamplerOptions &options) {
    require_shots(shots, "mitigate_ctmp");
    if (shots.num_qubits() != model.num_qubits()) {
        throw std::invalid_argument("mitigate_ctmp: shot width does not match the model");
    }
    const double gamma = resolve_ctmp_gamma(model, options);
    if (gamma == 0) {
        MitigationResult r = mitigate_raw(shots, obs);
        r.method = MitigationMethod::Exact;
        r.seed = options.seed;
        return r;
    }
    const double c_norm = ctmp_c_norm(gamma);
    const std::uint64_t total = inner_samples(options, c_norm);
    const auto words = shots.words();
    const Moments m = run_chunked(total, options, [&](Rng &rng) {
        std::uint64_t x = words[uniform_index(rng, words.size())];
        const unsigned alpha = sample_poisson(gamma, rng);
        for (unsigned k = 0; k < alpha; ++k) x = markov_step_B(model, gamma, x, rng);
        return (alpha & 1u ? -1.0 : 1.0) * obs(x);
    });

    MitigationResult r;
    r.samples_used = total;
    r.xi = c_norm * m.sum / static_cast<double>(total);
    r.std_err = c_norm * std_error(m, total);
    r.method = MitigationMethod::CtmpAlg1;
    r.gamma_used = gamma;
    r.c_norm = c_norm;
    r.seed = options.seed;
    r.sampled = true;
    return r;
}

OverheadReport overhead_for_gamma(double gamma, double delta) {
    OverheadReport r;
    r.model_kind = "ctmp";
    r.gamma = gamma;
    r.c_norm = ctmp_c_norm(gamma);
    r.Gamma = r.c_norm;
    r.overhead = std::exp(4.0 * gamma);
    r.delta = delta;
    r.samples = required_shots(delta, r.c_norm);
    r.shots = r.samples;
    return r;
}

OverheadReport overhead_report(const TPNoise &model, double delta) {
    OverheadReport r;
    r.model_kind = "tp";
    for (std::size_t q = 1; q <= model.num_qubits(); ++q) r.gamma += std::max(model.eps(q), model.eta(q));
    r.Gamma = gamma_tp(model);
    r.c_norm = r.Gamma;
    r.overhead = r.Gamma * r.Gamma;
    r.delta = delta;
    r.samples = required_shots(delta, r.c_norm);
    r.shots = r.samples;
    return r;
}

OverheadReport overhead_report(const CTMPModel &model, double delta, const SamplerOptions &options) {
    return overhead_for_gamma(resolve_ctmp_gamma(model, options), delta);
}

OverheadReport overhead_report(const FullNoiseMatrix &model, double delta) {
    OverheadReport r;
    r.model_kind = "full";
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(model.matrix());
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) throw NumericError("overhead_report: noise matrix is singular");
    r.Gamma = model.num_qubits() <= kExplicitInverseQubits ? gamma_of(lu.inverse()) : 1.0 / rcond;
    r.c_norm = r.Gamma;
    r.overhead = r.Gamma * r.Gamma;
    r.delta = delta;
    r.samples = required_shots(delta, r.c_norm);
    r.shots = r.samples;
    return r;
}

}  // namespace readmit
