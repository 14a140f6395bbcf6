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

#include "readmit/noise_model.h"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "readmit/error.h"

namespace readmit {

// ---------------------------------------------------------------- TPNoise

TPNoise::TPNoise(std::vector<double> eps, std::vector<double> eta) : eps_(std::move(eps)), eta_(std::move(eta)) {
    if (eps_.size() != eta_.size()) {
        throw std::invalid_argument("TPNoise: eps and eta lengths differ");
    }
    if (eps_.empty() || eps_.size() > kMaxQubits) {
        throw std::invalid_argument("TPNoise: qubit count must be in [1, 64]");
    }
    for (std::size_t j = 0; j < eps_.size(); ++j) {
        double e = eps_[j], h = eta_[j];
        if (!(e >= 0 && e <= 1 && h >= 0 && h <= 1)) {
            throw std::invalid_argument("TPNoise: rates of qubit " + std::to_string(j + 1) + " outside [0, 1]");
        }
        if (!(e + h < 1)) {
            throw std::invalid_argument("TPNoise: eps + eta >= 1 on qubit " + std::to_string(j + 1) +
                                        " (factor not invertible)");
        }
    }
}

TPNoise TPNoise::uniform(std::size_t n, double eps, double eta) {
    return TPNoise(std::vector<double>(n, eps), std::vector<double>(n, eta));
}

// ---------------------------------------------------------------- CTMPModel

namespace {

struct KindName {
    FlipKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {FlipKind::ZeroToOne, "0->1"},    {FlipKind::OneToZero, "1->0"},    {FlipKind::Swap01To10, "01->10"},
    {FlipKind::Raise00To11, "00->11"}, {FlipKind::Lower11To00, "11->00"},
};

CompiledTerm compile(std::size_t n, const CTMPGeneratorTerm &t) {
    std::uint64_t a = qubit_mask(n, t.first);
    switch (t.kind) {
        case FlipKind::ZeroToOne:
            return {a, 0, t.rate};
        case FlipKind::OneToZero:
            return {a, a, t.rate};
        case FlipKind::Swap01To10:
            return {a | qubit_mask(n, t.second), qubit_mask(n, t.second), t.rate};
        case FlipKind::Raise00To11:
            return {a | qubit_mask(n, t.second), 0, t.rate};
        case FlipKind::Lower11To00:
            return {a | qubit_mask(n, t.second), a | qubit_mask(n, t.second), t.rate};
    }
    return {};
}

}  // namespace

std::string_view to_string(FlipKind kind) {
    for (const auto &k : kKindNames) {
        if (k.kind == kind) return k.name;
    }
    return "?";
}

FlipKind parse_flip_kind(std::string_view text) {
    for (const auto &k : kKindNames) {
        if (k.name == text) return k.kind;
    }
    throw std::invalid_argument("unknown CTMP term kind '" + std::string(text) + "'");
}

bool is_two_qubit(FlipKind kind) {
    return kind == FlipKind::Swap01To10 || kind == FlipKind::Raise00To11 || kind == FlipKind::Lower11To00;
}

CTMPModel::CTMPModel(std::size_t n, std::vector<CTMPGeneratorTerm> terms) : n_(n), terms_(std::move(terms)) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("CTMPModel: qubit count must be in [1, 64]");
    std::map<std::tuple<FlipKind, std::size_t, std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        auto &t = terms_[i];
        std::string where = std::string(to_string(t.kind)) + " term #" + std::to_string(i);
        if (!std::isfinite(t.rate) || t.rate < 0) {
            throw std::invalid_argument("CTMPModel: " + where + " has invalid rate " + std::to_string(t.rate));
        }
        if (t.first < 1 || t.first > n) throw std::invalid_argument("CTMPModel: " + where + " qubit out of range");
        if (is_two_qubit(t.kind)) {
            if (t.second < 1 || t.second > n) {
                throw std::invalid_argument("CTMPModel: " + where + " second qubit out of range");
            }
            if (t.second == t.first) throw std::invalid_argument("CTMPModel: " + where + " acts twice on one qubit");
            if (t.kind != FlipKind::Swap01To10 && t.first > t.second) std::swap(t.first, t.second);
        } else if (t.second != 0) {
            throw std::invalid_argument("CTMPModel: single-qubit " + where + " lists a second qubit");
        }
        auto key = std::make_tuple(t.kind, t.first, t.second);
        if (!seen.emplace(key, i).second) {
            throw std::invalid_argument("CTMPModel: duplicate " + where + " on qubits (" + std::to_string(t.first) +
                                        (t.second ? "," + std::to_string(t.second) : "") + ")");
        }
        if (t.rate > 0) compiled_.push_back(compile(n, t));
    }
}

CTMPModel CTMPModel::from_tp(const TPNoise &tp) {
    std::vector<CTMPGeneratorTerm> terms;
    for (std::size_t j = 1; j <= tp.num_qubits(); ++j) {
        double e = tp.eps(j), h = tp.eta(j);
        double s = e + h;
        // -log(1 - s) / s, with the s -> 0 limit of 1.
        double scale = s > 1e-12 ? -std::log1p(-s) / s : 1.0 + s / 2;
        terms.push_back({FlipKind::ZeroToOne, j, 0, e * scale});
        terms.push_back({FlipKind::OneToZero, j, 0, h * scale});
    }
    return CTMPModel(tp.num_qubits(), std::move(terms));
}

double CTMPModel::exit_rate(std::uint64_t word) const {
    double r = 0;
    for (const auto &t : compiled_) {
        if ((word & t.mask) == t.pattern) r += t.rate;
    }
    return r;
}

double CTMPModel::rate(FlipKind kind, std::size_t first, std::size_t second) const {
    if ((kind == FlipKind::Raise00To11 || kind == FlipKind::Lower11To00) && first > second) std::swap(first, second);
    for (const auto &t : terms_) {
        if (t.kind == kind && t.first == first && t.second == second) return t.rate;
    }
    return 0;
}

std::uint64_t ctmp_sample(const CTMPModel &model, std::uint64_t x, Rng &rng) {
    const auto &terms = model.compiled();
    double t = 0;
    while (true) {
        double total = model.exit_rate(x);
        if (total <= 0) return x;
        t += exponential(rng, total);
        if (t > 1.0) return x;
        double u = uniform01(rng) * total;
        double acc = 0;
        const CompiledTerm *pick = nullptr;
        for (const auto &term : terms) {
            if ((x & term.mask) != term.pattern) continue;
            acc += term.rate;
            pick = &term;
            if (u < acc) break;
        }
        x ^= pick->mask;
    }
}

std::uint64_t markov_step_B(const CTMPModel &model, double gamma, std::uint64_t x, Rng &rng) {
    if (!(gamma > 0)) throw NumericError("markov_step_B: gamma must be positive");
    double u = uniform01(rng) * gamma;
    double acc = 0;
    std::uint64_t next = x;
    bool moved = false;
    for (const auto &term : model.compiled()) {
        if ((x & term.mask) != term.pattern) continue;
        acc += term.rate;
        if (!moved && u < acc) {
            next = x ^ term.mask;
            moved = true;
        }
    }
    if (acc > gamma * (1 + 1e-12)) {
        throw NumericError("markov_step_B: exit rate " + std::to_string(acc) + " at " +
                           word_to_string(model.num_qubits(), x) + " exceeds gamma " + std::to_string(gamma));
    }
    return next;
}

// ---------------------------------------------------------------- FullNoiseMatrix

FullNoiseMatrix::FullNoiseMatrix(std::size_t n, Eigen::MatrixXd a) : n_(n), a_(std::move(a)) {
    if (n == 0 || n > kMaxDenseQubits) {
        throw std::invalid_argument("FullNoiseMatrix: n must be in [1, 12], got " + std::to_string(n));
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (a_.rows() != dim || a_.cols() != dim) {
        throw std::invalid_argument("FullNoiseMatrix: expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                                    " matrix");
    }
    for (Eigen::Index x = 0; x < dim; ++x) {
        double sum = 0;
        for (Eigen::Index y = 0; y < dim; ++y) {
            double &v = a_(y, x);
            if (v < 0 && v > -1e-12) v = 0;
            if (v > 1 && v < 1 + 1e-12) v = 1;
            if (!(v >= 0 && v <= 1)) {
                throw std::invalid_argument("FullNoiseMatrix: entry (" + std::to_string(y) + "," + std::to_string(x) +
                                            ") = " + std::to_string(v) + " outside [0, 1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1) > 1e-9) {
            throw std::invalid_argument("FullNoiseMatrix: column " + word_to_string(n, static_cast<std::uint64_t>(x)) +
                                        " sums to " + std::to_string(sum));
        }
    }
}

std::uint64_t FullNoiseMatrix::sample(std::uint64_t x, Rng &rng) const {
    const auto col = static_cast<Eigen::Index>(x);
    double u = uniform01(rng);
    double acc = 0;
    Eigen::Index last = 0;
    for (Eigen::Index y = 0; y < a_.rows(); ++y) {
        double p = a_(y, col);
        if (p <= 0) continue;
        acc += p;
        last = y;
        if (u < acc) return static_cast<std::uint64_t>(y);
    }
    return static_cast<std::uint64_t>(last);
}

double tvd(const FullNoiseMatrix &a, const FullNoiseMatrix &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("tvd: matrices act on different qubit counts");
    }
    return 0.5 * (a.matrix() - b.matrix()).cwiseAbs().colwise().sum().maxCoeff();
}

// ---------------------------------------------------------------- dispatch

std::size_t num_qubits(const NoiseModel &model) {
    return std::visit([](const auto &m) { return m.num_qubits(); }, model);
}

std::uint64_t sample_noisy_word(const TPNoise &model, std::uint64_t x, Rng &rng) {
    const std::size_t n = model.num_qubits();
    std::uint64_t y = x;
    for (std::size_t j = 1; j <= n; ++j) {
        std::uint64_t m = qubit_mask(n, j);
        double p = (x & m) ? model.eta()[j - 1] : model.eps()[j - 1];
        if (p > 0 && uniform01(rng) < p) y ^= m;
    }
    return y;
}

std::uint64_t sample_noisy_word(const NoiseModel &model, std::uint64_t x, Rng &rng) {
    struct Visitor {
        std::uint64_t x;
        Rng &rng;
        std::uint64_t operator()(const TPNoise &m) const {
            return sample_noisy_word(m, x, rng);
        }
        std::uint64_t operator()(const CTMPModel &m) const {
            return ctmp_sample(m, x, rng);
        }
        std::uint64_t operator()(const FullNoiseMatrix &m) const {
            return m.sample(x, rng);
        }
    };
    return std::visit(Visitor{x, rng}, model);
}

BitString sample_noisy(const NoiseModel &model, const BitString &x, Rng &rng) {
    const std::size_t n = num_qubits(model);
    if (x.size() != n) {
        throw std::invalid_argument("sample_noisy: input has " + std::to_string(x.size()) + " bits, model has " +
                                    std::to_string(n));
    }
    return BitString(n, sample_noisy_word(model, x.word(), rng));
}

FullNoiseMatrix build_full_matrix(const TPNoise &model) {
    const std::size_t n = model.num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("build_full_matrix: n > 12");
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(1, 1);
    for (std::size_t j = 1; j <= n; ++j) {
        Eigen::Matrix2d f;
        f << 1 - model.eps(j), model.eta(j), model.eps(j), 1 - model.eta(j);
        Eigen::MatrixXd next(a.rows() * 2, a.cols() * 2);
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            for (Eigen::Index c = 0; c < a.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = a(r, c) * f;
            }
        }
        a = std::move(next);
    }
    return FullNoiseMatrix(n, std::move(a));
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

SparseMatrix sparse_generator(const CTMPModel &model) {
    const std::size_t n = model.num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("CTMP generator matrix requires n <= 12");
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::uint64_t x = 0; x < dim; ++x) {
        double out = 0;
        for (const auto &t : model.compiled()) {
            if ((x & t.mask) != t.pattern) continue;
            triplets.emplace_back(static_cast<int>(x ^ t.mask), static_cast<int>(x), t.rate);
            out += t.rate;
        }
        if (out > 0) triplets.emplace_back(static_cast<int>(x), static_cast<int>(x), -out);
    }
    SparseMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    g.setFromTriplets(triplets.begin(), triplets.end());
    return g;
}

// Truncated Taylor series of exp(X) with ||X||_1 <= 1/2: the remainder after
// order 12 is below 0.5^13 / 13! * e^0.5 < 1e-13.
constexpr int kTaylorOrder = 14;

int squarings_for(double norm1) {
    int s = 0;
    while (norm1 > 0.5) {
        norm1 /= 2;
        ++s;
    }
    return s;
}

template <typename Mat>
Eigen::MatrixXd expm_scaled(const Mat &x, Eigen::Index dim, int squarings) {
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
    for (int k = 1; k <= kTaylorOrder; ++k) {
        term = (x * term) / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

}  // namespace

Eigen::MatrixXd generator_matrix(const CTMPModel &model) {
    return Eigen::MatrixXd(sparse_generator(model));
}

Eigen::MatrixXd expm_generator(const CTMPModel &model, double t) {
    SparseMatrix g = sparse_generator(model);
    double norm = 0;
    for (Eigen::Index c = 0; c < g.outerSize(); ++c) {
        double col = 0;
        for (SparseMatrix::InnerIterator it(g, c); it; ++it) col += std::abs(it.value());
        norm = std::max(norm, col);
    }
    norm *= std::abs(t);
    int s = squarings_for(norm);
    SparseMatrix x = g * (t / std::ldexp(1.0, s));
    return expm_scaled(x, g.rows(), s);
}

Eigen::MatrixXd expm_dense(const Eigen::MatrixXd &m) {
    double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    int s = squarings_for(norm);
    Eigen::MatrixXd x = m / std::ldexp(1.0, s);
    return expm_scaled(x, m.rows(), s);
}

FullNoiseMatrix build_full_matrix(const CTMPModel &model) {
    return FullNoiseMatrix(model.num_qubits(), expm_generator(model, 1.0));
}

FullNoiseMatrix build_full_matrix(const NoiseModel &model) {
    struct Visitor {
        FullNoiseMatrix operator()(const TPNoise &m) const {
            return build_full_matrix(m);
        }
        FullNoiseMatrix operator()(const CTMPModel &m) const {
            return build_full_matrix(m);
        }
        FullNoiseMatrix operator()(const FullNoiseMatrix &m) const {
            return m;
        }
    };
    return std::visit(Visitor{}, model);
}

}  // namespace readmit
