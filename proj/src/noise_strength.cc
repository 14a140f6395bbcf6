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

#include "readmit/noise_strength.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "readmit/bitstring.h"
#include "readmit/random.h"

namespace readmit {

namespace {

// Bit position (0 = least significant) of each set bit of a term mask.
std::size_t low_position(std::uint64_t mask) {
    return static_cast<std::size_t>(std::countr_zero(mask));
}

double form_value(const ExitRateForm &f, std::uint64_t word) {
    double v = f.constant;
    for (std::size_t i = 0; i < f.n; ++i) {
        if (!((word >> i) & 1)) continue;
        v += f.linear[i];
        for (std::size_t j = i + 1; j < f.n; ++j) {
            if ((word >> j) & 1) v += f.J(i, j);
        }
    }
    return v;
}

// field[i] = h_i + sum_j J_ij x_j, so flipping bit i changes R by
// (1 - 2 x_i) * field[i].
std::vector<double> local_fields(const ExitRateForm &f, std::uint64_t word) {
    std::vector<double> field(f.linear);
    for (std::size_t i = 0; i < f.n; ++i) {
        for (std::size_t j = 0; j < f.n; ++j) {
            if (j != i && ((word >> j) & 1)) field[i] += f.J(i, j);
        }
    }
    return field;
}

void apply_flip(const ExitRateForm &f, std::vector<double> &field, std::uint64_t &word, std::size_t i) {
    double dir = ((word >> i) & 1) ? -1.0 : 1.0;
    word ^= std::uint64_t{1} << i;
    const double *row = &f.coupling[i * f.n];
    for (std::size_t j = 0; j < f.n; ++j) field[j] += dir * row[j];
}

NoiseStrengthResult exact_gamma(const CTMPModel &model, const ExitRateForm &f) {
    const std::size_t n = f.n;
    if (n > kMaxExactGammaQubits) {
        throw std::invalid_argument("exact noise strength limited to n <= 24, got " + std::to_string(n));
    }
    std::uint64_t word = 0;
    double value = f.constant;
    std::vector<double> field = local_fields(f, 0);
    double best = value;
    std::uint64_t best_word = 0;
    const std::uint64_t steps = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < steps; ++k) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(k));
        double dir = ((word >> i) & 1) ? -1.0 : 1.0;
        value += dir * field[i];
        apply_flip(f, field, word, i);
        if ((k & 0xfff) == 0) {
            // Resynchronise to keep round-off from drifting over 2^24 updates.
            value = form_value(f, word);
            field = local_fields(f, word);
        }
        if (value > best) {
            best = value;
            best_word = word;
        }
    }
    return {model.exit_rate(best_word), best_word, true};
}

NoiseStrengthResult anneal_gamma(const CTMPModel &model, const ExitRateForm &f, const AnnealingConfig &cfg) {
    const std::size_t n = f.n;
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::abs(f.linear[i]);
        for (std::size_t j = 0; j < n; ++j) s += std::abs(f.J(i, j));
        scale = std::max(scale, s);
    }
    NoiseStrengthResult result{model.exit_rate(0), 0, false};
    if (scale <= 0) return result;
    const double t0 = cfg.initial_temperature * scale;
    const double t1 = cfg.final_temperature * scale;
    const std::size_t sweeps = std::max<std::size_t>(cfg.sweeps, 1);
    const double cooling = sweeps > 1 ? std::pow(t1 / t0, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;
    for (std::size_t r = 0; r < std::max<std::size_t>(cfg.restarts, 1); ++r) {
        Rng rng = make_stream(cfg.seed, r);
        std::uint64_t word = rng() & full_mask(n);
        double value = form_value(f, word);
        std::vector<double> field = local_fields(f, word);
        std::uint64_t best_word = word;
        double best = value;
        double temp = t0;
        for (std::size_t s = 0; s < sweeps; ++s, temp *= cooling) {
            for (std::size_t i = 0; i < n; ++i) {
                double delta = (((word >> i) & 1) ? -1.0 : 1.0) * field[i];
                if (delta >= 0 || uniform01(rng) < std::exp(delta / temp)) {
                    value += delta;
                    apply_flip(f, field, word, i);
                    if (value > best) {
                        best = value;
                        best_word = word;
                    }
                }
            }
        }
        // Greedy polish from the best state seen.
        word = best_word;
        field = local_fields(f, word);
        for (bool improved = true; improved;) {
            improved = false;
            for (std::size_t i = 0; i < n; ++i) {
                double delta = (((word >> i) & 1) ? -1.0 : 1.0) * field[i];
                if (delta > 1e-15) {
                    apply_flip(f, field, word, i);
                    improved = true;
                }
            }
        }
        double exact_value = model.exit_rate(word);
        if (exact_value > result.gamma) result = {exact_value, word, false};
    }
    return result;
}

}  // namespace

double ExitRateForm::operator()(std::uint64_t word) const {
    return form_value(*this, word);
}

ExitRateForm exit_rate_form(const CTMPModel &model) {
    const std::size_t n = model.num_qubits();
    ExitRateForm f;
    f.n = n;
    f.linear.assign(n, 0.0);
    f.coupling.assign(n * n, 0.0);
    for (const auto &t : model.compiled()) {
        if (std::popcount(t.mask) == 1) {
            std::size_t i = low_position(t.mask);
            if (t.pattern) {
                f.linear[i] += t.rate;  // x_i
            } else {
                f.constant += t.rate;  // 1 - x_i
                f.linear[i] -= t.rate;
            }
            continue;
        }
        std::size_t a = low_position(t.mask);
        std::size_t b = low_position(t.mask & ~(std::uint64_t{1} << a));
        bool pa = (t.pattern >> a) & 1;
        bool pb = (t.pattern >> b) & 1;
        // Expand l_a * l_b with l = x or (1 - x).
        double sa = pa ? 1.0 : -1.0;
        double sb = pb ? 1.0 : -1.0;
        double ca = pa ? 0.0 : 1.0;
        double cb = pb ? 0.0 : 1.0;
        // (ca + sa x_a)(cb + sb x_b)
        f.constant += t.rate * ca * cb;
        f.linear[a] += t.rate * sa * cb;
        f.linear[b] += t.rate * ca * sb;
        f.coupling[a * n + b] += t.rate * sa * sb;
        f.coupling[b * n + a] += t.rate * sa * sb;
    }
    return f;
}

NoiseStrengthResult compute_noise_strength(const CTMPModel &model, const NoiseStrengthOptions &options) {
    if (model.compiled().empty()) return {0.0, 0, true};
    ExitRateForm f = exit_rate_form(model);
    GammaMethod method = options.method;
    if (method == GammaMethod::Auto) {
        method = model.num_qubits() <= kMaxExactGammaQubits ? GammaMethod::Exact : GammaMethod::Annealing;
    }
    if (method == GammaMethod::Exact) return exact_gamma(model, f);
    return anneal_gamma(model, f, options.annealing);
}

double noise_strength(CTMPModel &model, const NoiseStrengthOptions &options) {
    auto r = compute_noise_strength(model, options);
    model.cache_gamma(r.gamma, r.exact);
    return r.gamma;
}

}  // namespace readmit
