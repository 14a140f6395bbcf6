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

#include "readmit/calibration.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "readmit/error.h"
#include "readmit/matrix_log.h"

namespace readmit {

namespace {

std::string pattern_name(int v) {
    return std::string{static_cast<char>('0' + (v >> 1)), static_cast<char>('0' + (v & 1))};
}

// Pattern index 2 * x_j + x_k of a word on qubits (j, k).
int pattern_of(std::size_t n, std::uint64_t x, std::size_t j, std::size_t k) {
    return ((x & qubit_mask(n, j)) ? 2 : 0) | ((x & qubit_mask(n, k)) ? 1 : 0);
}

void check_pair(std::size_t n, std::size_t j, std::size_t k) {
    if (j < 1 || j > n || k < 1 || k > n || j == k) {
        throw std::invalid_argument("invalid qubit pair (" + std::to_string(j) + "," + std::to_string(k) + ") for n=" +
                                    std::to_string(n));
    }
}

LocalNoiseMatrix normalise(std::size_t j, std::size_t k, const Eigen::Matrix4d &num, const Eigen::Vector4d &den) {
    LocalNoiseMatrix local;
    local.j = j;
    local.k = k;
    local.eligible = den;
    for (int v = 0; v < 4; ++v) {
        if (den(v) <= 0) {
            throw DataError("fit_local: no eligible calibration rounds for pattern " + pattern_name(v) +
                            " on qubits (" + std::to_string(j) + "," + std::to_string(k) + ")");
        }
        local.a.col(v) = num.col(v) / den(v);
    }
    return local;
}

}  // namespace

std::string_view to_string(CalibrationKind kind) {
    switch (kind) {
        case CalibrationKind::Weight1:
            return "weight1";
        case CalibrationKind::Weight2:
            return "weight2";
        case CalibrationKind::Hadamard:
            return "hadamard";
        case CalibrationKind::Full:
            return "full";
        case CalibrationKind::Custom:
            return "custom";
    }
    return "?";
}

CalibrationKind parse_calibration_kind(std::string_view text) {
    for (auto k : {CalibrationKind::Weight1, CalibrationKind::Weight2, CalibrationKind::Hadamard, CalibrationKind::Full,
                   CalibrationKind::Custom}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown calibration kind '" + std::string(text) + "'");
}

CalibrationSet::CalibrationSet(std::size_t n, std::vector<std::uint64_t> inputs, CalibrationKind kind)
    : n_(n), inputs_(std::move(inputs)), kind_(kind) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("CalibrationSet: n must be in [1, 64]");
    std::set<std::uint64_t> seen;
    for (auto x : inputs_) {
        if (x & ~full_mask(n)) throw std::invalid_argument("CalibrationSet: input longer than n bits");
        if (!seen.insert(x).second) {
            throw std::invalid_argument("CalibrationSet: duplicate input " + word_to_string(n, x));
        }
    }
}

CalibrationSet make_calibration_set(CalibrationKind kind, std::size_t n) {
    if (n < 2) throw std::invalid_argument("calibration sets need n >= 2");
    if (n > kMaxQubits) throw std::invalid_argument("calibration sets need n <= 64");
    std::vector<std::uint64_t> inputs;
    switch (kind) {
        case CalibrationKind::Weight1:
            inputs.push_back(0);
            inputs.push_back(full_mask(n));
            for (std::size_t j = 1; j <= n; ++j) inputs.push_back(qubit_mask(n, j));
            break;
        case CalibrationKind::Weight2:
            inputs.push_back(0);
            for (std::size_t j = 1; j <= n; ++j) inputs.push_back(qubit_mask(n, j));
            for (std::size_t j = 1; j <= n; ++j) {
                for (std::size_t k = j + 1; k <= n; ++k) inputs.push_back(qubit_mask(n, j) | qubit_mask(n, k));
            }
            break;
        case CalibrationKind::Hadamard: {
            std::size_t p = 0;
            while ((std::uint64_t{1} << p) <= n) ++p;
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << p); ++a) {
                std::uint64_t x = 0;
                for (std::size_t b = 1; b <= n; ++b) {
                    if (std::popcount(a & b) & 1) x |= qubit_mask(n, b);
                }
                inputs.push_back(x);
            }
            break;
        }
        case CalibrationKind::Full:
            if (n > kMaxDenseQubits) throw std::invalid_argument("full calibration set needs n <= 12");
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) inputs.push_back(x);
            break;
        case CalibrationKind::Custom:
            throw std::invalid_argument("custom calibration sets are loaded from a file, not constructed");
    }
    return CalibrationSet(n, std::move(inputs), kind);
}

std::optional<UncoveredPattern> find_uncovered(std::size_t n, const std::vector<std::uint64_t> &inputs) {
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
            unsigned seen = 0;
            for (auto x : inputs) {
                seen |= 1u << pattern_of(n, x, a, b);
                if (seen == 0xf) break;
            }
            for (int v = 0; v < 4; ++v) {
                if (!(seen & (1u << v))) return UncoveredPattern{a, b, (v & 2) != 0, (v & 1) != 0};
            }
        }
    }
    return std::nullopt;
}

bool is_complete(const CalibrationSet &set) {
    return !find_uncovered(set.num_qubits(), set.inputs()).has_value();
}

CalibrationData::CalibrationData(std::size_t n, std::uint64_t n_cal, std::map<std::uint64_t, Counts> records)
    : n_(n), n_cal_(n_cal), records_(std::move(records)) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("CalibrationData: n must be in [1, 64]");
    if (n_cal == 0) throw std::invalid_argument("CalibrationData: n_cal must be positive");
    for (const auto &[x, counts] : records_) {
        if (x & ~full_mask(n)) throw std::invalid_argument("CalibrationData: input longer than n bits");
        std::uint64_t total = 0;
        for (const auto &[y, m] : counts) {
            if (y & ~full_mask(n)) throw std::invalid_argument("CalibrationData: outcome longer than n bits");
            total += m;
        }
        if (total != n_cal) {
            throw std::invalid_argument("CalibrationData: counts for input " + word_to_string(n, x) + " sum to " +
                                        std::to_string(total) + ", expected n_cal=" + std::to_string(n_cal));
        }
    }
}

std::vector<std::uint64_t> CalibrationData::inputs() const {
    std::vector<std::uint64_t> xs;
    for (const auto &[x, counts] : records_) xs.push_back(x);
    return xs;
}

CalibrationData simulate_calibration(const NoiseModel &model, const CalibrationSet &set, std::uint64_t n_cal,
                                     std::uint64_t seed, unsigned threads) {
    if (num_qubits(model) != set.num_qubits()) {
        throw std::invalid_argument("simulate_calibration: model and calibration set sizes differ");
    }
    const auto &inputs = set.inputs();
    std::vector<CalibrationData::Counts> tallies(inputs.size());
    parallel_chunks(inputs.size(), threads, [&](std::size_t i) {
        Rng rng = make_stream(seed, i);
        auto &counts = tallies[i];
        for (std::uint64_t r = 0; r < n_cal; ++r) ++counts[sample_noisy_word(model, inputs[i], rng)];
    });
    std::map<std::uint64_t, CalibrationData::Counts> records;
    for (std::size_t i = 0; i < inputs.size(); ++i) records.emplace(inputs[i], std::move(tallies[i]));
    return CalibrationData(set.num_qubits(), n_cal, std::move(records));
}

FullNoiseMatrix fit_full(const CalibrationData &data) {
    const std::size_t n = data.num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("fit_full: n must be <= 12");
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const double norm = static_cast<double>(data.n_cal());
    for (std::uint64_t x = 0; x < dim; ++x) {
        auto it = data.records().find(x);
        if (it == data.records().end()) {
            throw DataError("fit_full: input " + word_to_string(n, x) + " was not calibrated");
        }
        for (const auto &[y, m] : it->second) {
            a(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = static_cast<double>(m) / norm;
        }
    }
    return FullNoiseMatrix(n, std::move(a));
}

TPNoise fit_tp(const CalibrationData &data) {
    const std::size_t n = data.num_qubits();
    std::vector<double> err0(n, 0), tot0(n, 0), err1(n, 0), tot1(n, 0);
    for (const auto &[x, counts] : data.records()) {
        for (const auto &[y, m] : counts) {
            const double c = static_cast<double>(m);
            for (std::size_t j = 1; j <= n; ++j) {
                const std::uint64_t bit = qubit_mask(n, j);
                if (x & bit) {
                    tot1[j - 1] += c;
                    if (!(y & bit)) err1[j - 1] += c;
                } else {
                    tot0[j - 1] += c;
                    if (y & bit) err0[j - 1] += c;
                }
            }
        }
    }
    std::vector<double> eps(n), eta(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (tot0[j] == 0) {
            throw DataError("fit_tp: no calibration input prepares qubit " + std::to_string(j + 1) + " in state 0");
        }
        if (tot1[j] == 0) {
            throw DataError("fit_tp: no calibration input prepares qubit " + std::to_string(j + 1) + " in state 1");
        }
        eps[j] = err0[j] / tot0[j];
        eta[j] = err1[j] / tot1[j];
    }
    return TPNoise(std::move(eps), std::move(eta));
}

LocalNoiseMatrix fit_local(const CalibrationData &data, std::size_t j, std::size_t k) {
    const std::size_t n = data.num_qubits();
    check_pair(n, j, k);
    const std::uint64_t others = full_mask(n) & ~(qubit_mask(n, j) | qubit_mask(n, k));
    Eigen::Matrix4d num = Eigen::Matrix4d::Zero();
    Eigen::Vector4d den = Eigen::Vector4d::Zero();
    for (const auto &[x, counts] : data.records()) {
        const int v = pattern_of(n, x, j, k);
        for (const auto &[y, m] : counts) {
            if ((x ^ y) & others) continue;
            num(pattern_of(n, y, j, k), v) += static_cast<double>(m);
            den(v) += static_cast<double>(m);
        }
    }
    return normalise(j, k, num, den);
}

Eigen::Matrix4d principal_log_4x4(const LocalNoiseMatrix &local) {
    return principal_log(local.a);
}

Eigen::Matrix4d clipped_local_generator(const LocalNoiseMatrix &local) {
    Eigen::Matrix4d g = principal_log_4x4(local);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r != c && g(r, c) < 0) g(r, c) = 0;
        }
    }
    return g;
}

namespace {

// All local matrices at once. Only rounds whose error pattern x ^ y touches
// at most two qubits are eligible for any pair, so each record is reduced to
// its error-free count plus single and double error tallies.
std::vector<LocalNoiseMatrix> fit_all_local(const CalibrationData &data) {
    const std::size_t n = data.num_qubits();
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<Eigen::Matrix4d> num(pairs, Eigen::Matrix4d::Zero());
    std::vector<Eigen::Vector4d> den(pairs, Eigen::Vector4d::Zero());
    std::vector<double> single(n);
    std::vector<double> dbl(n * n);
    for (const auto &[x, counts] : data.records()) {
        double clean = 0;
        std::fill(single.begin(), single.end(), 0.0);
        std::fill(dbl.begin(), dbl.end(), 0.0);
        for (const auto &[y, m] : counts) {
            const std::uint64_t diff = x ^ y;
            const int w = std::popcount(diff);
            if (w == 0) {
                clean += static_cast<double>(m);
            } else if (w == 1) {
                single[n - 1 - static_cast<std::size_t>(std::countr_zero(diff))] += static_cast<double>(m);
            } else if (w == 2) {
                // Qubit q sits at bit n - q, so the higher bit is the lower qubit.
                std::size_t qa = n - 1 - (63 - static_cast<std::size_t>(std::countl_zero(diff)));
                std::size_t qb = n - 1 - static_cast<std::size_t>(std::countr_zero(diff));
                dbl[qa * n + qb] += static_cast<double>(m);
            }
        }
        std::size_t p = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j + 1; k <= n; ++k, ++p) {
                const int v = pattern_of(n, x, j, k);
                const double sj = single[j - 1], sk = single[k - 1], sjk = dbl[(j - 1) * n + (k - 1)];
                num[p](v, v) += clean;
                num[p](v ^ 2, v) += sj;
                num[p](v ^ 1, v) += sk;
                num[p](v ^ 3, v) += sjk;
                den[p](v) += clean + sj + sk + sjk;
            }
        }
    }
    std::vector<LocalNoiseMatrix> out;
    out.reserve(pairs);
    std::size_t p = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = j + 1; k <= n; ++k, ++p) out.push_back(normalise(j, k, num[p], den[p]));
    }
    return out;
}

}  // namespace

CTMPModel fit_ctmp(const CalibrationData &data) {
    const std::size_t n = data.num_qubits();
    if (n < 2) throw std::invalid_argument("fit_ctmp needs at least two qubits");
    if (auto gap = find_uncovered(n, data.inputs())) {
        throw DataError("fit_ctmp: calibration set is not complete; qubits (" + std::to_string(gap->a) + "," +
                        std::to_string(gap->b) + ") never prepared as " + std::to_string(gap->value_a) +
                        std::to_string(gap->value_b));
    }
    std::vector<double> up(n, 0), down(n, 0);
    std::vector<CTMPGeneratorTerm> pair_terms;
    for (const auto &local : fit_all_local(data)) {
        const Eigen::Matrix4d g = clipped_local_generator(local);
        const std::size_t j = local.j, k = local.k;
        // Basis index 2 * x_j + x_k: |00>=0, |01>=1, |10>=2, |11>=3.
        pair_terms.push_back({FlipKind::Swap01To10, j, k, g(2, 1)});
        pair_terms.push_back({FlipKind::Swap01To10, k, j, g(1, 2)});
        pair_terms.push_back({FlipKind::Raise00To11, j, k, g(3, 0)});
        pair_terms.push_back({FlipKind::Lower11To00, j, k, g(0, 3)});
        up[j - 1] += g(2, 0) + g(3, 1);
        down[j - 1] += g(0, 2) + g(1, 3);
        up[k - 1] += g(1, 0) + g(3, 2);
        down[k - 1] += g(0, 1) + g(2, 3);
    }
    std::vector<CTMPGeneratorTerm> terms;
    const double norm = 2.0 * static_cast<double>(n - 1);
    for (std::size_t j = 1; j <= n; ++j) {
        terms.push_back({FlipKind::ZeroToOne, j, 0, std::max(0.0, up[j - 1] / norm)});
        terms.push_back({FlipKind::OneToZero, j, 0, std::max(0.0, down[j - 1] / norm)});
    }
    for (auto &t : pair_terms) {
        t.rate = std::max(0.0, t.rate);
        terms.push_back(t);
    }
    return CTMPModel(n, std::move(terms));
}

}  // namespace readmit
