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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "readmit/bitstring.h"
#include "readmit/observable.h"
#include "readmit/random.h"
#include "readmit/shots.h"

namespace readmit {

BitString::BitString(std::size_t n, std::uint64_t word) : n_(n), word_(word) {
    if (n > kMaxQubits) {
        throw std::invalid_argument("BitString supports at most 64 qubits, got " + std::to_string(n));
    }
    if ((word & ~full_mask(n)) != 0) {
        throw std::invalid_argument("BitString word has bits beyond length " + std::to_string(n));
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.size() > kMaxQubits) {
        throw std::invalid_argument("bit string longer than 64 characters");
    }
    std::uint64_t w = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
        }
        w = (w << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return BitString(text.size(), w);
}

bool BitString::at(std::size_t qubit) const {
    if (qubit < 1 || qubit > n_) {
        throw std::out_of_range("qubit " + std::to_string(qubit) + " outside [1, " + std::to_string(n_) + "]");
    }
    return (word_ & qubit_mask(n_, qubit)) != 0;
}

BitString BitString::flipped(std::size_t qubit) const {
    if (qubit < 1 || qubit > n_) {
        throw std::out_of_range("qubit " + std::to_string(qubit) + " outside [1, " + std::to_string(n_) + "]");
    }
    return BitString(n_, word_ ^ qubit_mask(n_, qubit));
}

std::string BitString::str() const {
    return word_to_string(n_, word_);
}

std::string word_to_string(std::size_t n, std::uint64_t word) {
    std::string s(n, '0');
    for (std::size_t j = 1; j <= n; ++j) {
        if (word & qubit_mask(n, j)) s[j - 1] = '1';
    }
    return s;
}

DiagonalObservable::DiagonalObservable(std::size_t n, std::vector<std::size_t> support, int sign)
    : n_(n), support_(std::move(support)), sign_(sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("observable sign must be +1 or -1");
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("observable supports at most 64 qubits");
    }
    std::sort(support_.begin(), support_.end());
    for (std::size_t i = 0; i < support_.size(); ++i) {
        std::size_t q = support_[i];
        if (q < 1 || q > n) {
            throw std::out_of_range("observable support index " + std::to_string(q) + " outside [1, " +
                                    std::to_string(n) + "]");
        }
        if (i > 0 && support_[i - 1] == q) {
            throw std::invalid_argument("duplicate qubit " + std::to_string(q) + " in observable support");
        }
        mask_ |= qubit_mask(n, q);
    }
}

double DiagonalObservable::operator()(const BitString &x) const {
    return eval_observable(*this, x);
}

std::string DiagonalObservable::str() const {
    std::string s = sign_ > 0 ? "+" : "-";
    if (support_.empty()) return s + "I";
    for (auto q : support_) s += "Z" + std::to_string(q);
    return s;
}

double eval_observable(const DiagonalObservable &obs, const BitString &x) {
    const auto &support = obs.support();
    if (!support.empty() && x.size() < support.back()) {
        throw std::out_of_range("bit string of length " + std::to_string(x.size()) +
                                " is shorter than observable support index " + std::to_string(support.back()));
    }
    int parity = 0;
    for (auto q : support) parity ^= static_cast<int>(x.at(q));
    return parity ? -obs.sign() : obs.sign();
}

ShotSet::ShotSet(std::size_t n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
    if (n > kMaxQubits) throw std::invalid_argument("ShotSet supports at most 64 qubits");
    for (auto w : words_) {
        if (w & ~full_mask(n)) throw std::invalid_argument("shot word has bits beyond register length");
    }
}

void ShotSet::push_back(const BitString &s) {
    if (s.size() != n_) {
        throw std::invalid_argument("shot length " + std::to_string(s.size()) + " != register size " +
                                    std::to_string(n_));
    }
    words_.push_back(s.word());
}

std::map<std::uint64_t, std::size_t> ShotSet::histogram() const {
    std::map<std::uint64_t, std::size_t> h;
    for (auto w : words_) ++h[w];
    return h;
}

double raw_mean(const ShotSet &shots, const DiagonalObservable &obs) {
    if (shots.empty()) throw std::invalid_argument("raw_mean of an empty ShotSet");
    if (!obs.support().empty() && shots.num_qubits() < obs.support().back()) {
        throw std::out_of_range("observable support exceeds register size");
    }
    // Shots of the same register share the qubit->bit layout only when sizes match.
    DiagonalObservable o = obs.num_qubits() == shots.num_qubits()
                               ? obs
                               : DiagonalObservable(shots.num_qubits(), obs.support(), obs.sign());
    double sum = 0;
    for (auto w : shots.words()) sum += o(w);
    return sum / static_cast<double>(shots.size());
}

double raw_mean(const ShotSet &shots, const ObservableFn &obs) {
    if (shots.empty()) throw std::invalid_argument("raw_mean of an empty ShotSet");
    double sum = 0;
    for (auto w : shots.words()) sum += obs(w);
    return sum / static_cast<double>(shots.size());
}

ProbVector::ProbVector(std::size_t n, std::map<std::uint64_t, double> entries) : n_(n), entries_(std::move(entries)) {
    double total = 0;
    for (auto &[w, p] : entries_) {
        if (w & ~full_mask(n)) throw std::invalid_argument("ProbVector key has bits beyond register length");
        if (!(p >= 0)) throw std::invalid_argument("ProbVector entries must be non-negative");
        total += p;
        keys_.push_back(w);
        cdf_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("ProbVector entries sum to " + std::to_string(total) + ", expected 1");
    }
}

ProbVector ProbVector::point(const BitString &x) {
    return ProbVector(x.size(), {{x.word(), 1.0}});
}

double ProbVector::operator()(std::uint64_t word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? 0.0 : it->second;
}

double ProbVector::expectation(const ObservableFn &obs) const {
    double e = 0;
    for (auto &[w, p] : entries_) e += p * obs(w);
    return e;
}

std::uint64_t ProbVector::sample_at(double u) const {
    double target = u * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.end()) --it;
    return keys_[static_cast<std::size_t>(it - cdf_.begin())];
}

void parallel_chunks(std::size_t num_chunks, unsigned threads, const std::function<void(std::size_t)> &body) {
    if (threads <= 1 || num_chunks <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) body(c);
        return;
    }
    unsigned workers = std::min<std::size_t>(threads, num_chunks);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t c = t; c < num_chunks; c += workers) body(c);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) th.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace readmit
