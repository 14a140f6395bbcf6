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

#include "readmit/stabilizer.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace readmit {

namespace {

unsigned popcount(std::uint64_t w) {
    return static_cast<unsigned>(std::popcount(w));
}

void check_qubit(std::size_t n, std::size_t q, const char *what) {
    if (q < 1 || q > n) {
        throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(q) + " outside [1, " +
                                std::to_string(n) + "]");
    }
}

// Conjugation P -> U P U^dagger for the elementary gates on packed masks.
void conj_h(PauliString &p, std::uint64_t m) {
    const bool a = p.x & m, b = p.z & m;
    if (a && b) p.k += 2;
    if (a != b) {
        p.x ^= m;
        p.z ^= m;
    }
}

void conj_s(PauliString &p, std::uint64_t m) {
    if (p.x & m) {
        p.k += 1;
        p.z ^= m;
    }
}

void conj_x(PauliString &p, std::uint64_t m) {
    if (p.z & m) p.k += 2;
}

void conj_z(PauliString &p, std::uint64_t m) {
    if (p.x & m) p.k += 2;
}

void conj_cnot(PauliString &p, std::uint64_t c, std::uint64_t t) {
    if (p.x & c) p.x ^= t;
    if (p.z & t) p.z ^= c;
}

void conj_elementary(PauliString &p, GateKind kind, std::uint64_t m) {
    switch (kind) {
        case GateKind::H:
            conj_h(p, m);
            break;
        case GateKind::S:
            conj_s(p, m);
            break;
        case GateKind::X:
            conj_x(p, m);
            break;
        case GateKind::Z:
            conj_z(p, m);
            break;
        default:
            throw std::logic_error("not an elementary single-qubit gate");
    }
}

struct CliffordTable {
    std::vector<std::vector<GateKind>> words;

    CliffordTable() {
        using Key = std::tuple<std::uint64_t, std::uint64_t, unsigned, std::uint64_t, std::uint64_t, unsigned>;
        auto key = [](const PauliString &ix, const PauliString &iz) {
            return Key{ix.x, ix.z, ix.k % 4, iz.x, iz.z, iz.k % 4};
        };
        struct Node {
            PauliString ix, iz;
            std::vector<GateKind> word;
        };
        std::map<Key, bool> seen;
        std::deque<Node> queue;
        Node start{{1, 0, 0}, {0, 1, 0}, {}};
        seen[key(start.ix, start.iz)] = true;
        queue.push_back(start);
        while (!queue.empty()) {
            Node cur = queue.front();
            queue.pop_front();
            words.push_back(cur.word);
            for (GateKind g : {GateKind::H, GateKind::S}) {
                Node next = cur;
                conj_elementary(next.ix, g, 1);
                conj_elementary(next.iz, g, 1);
                next.word.push_back(g);
                auto [it, fresh] = seen.emplace(key(next.ix, next.iz), true);
                if (fresh) queue.push_back(std::move(next));
            }
        }
        if (words.size() != kSingleQubitCliffords) throw std::logic_error("single-qubit Clifford table is incomplete");
    }
};

const CliffordTable &clifford_table() {
    static const CliffordTable table;
    return table;
}

}  // namespace

// ---------------------------------------------------------------- gates

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::X:
            return "X";
        case GateKind::Z:
            return "Z";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::Clifford1:
            return "C1";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view text) {
    for (GateKind k : {GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CZ, GateKind::CNOT,
                       GateKind::Clifford1}) {
        if (text == to_string(k)) return k;
    }
    if (text == "CX") return GateKind::CNOT;
    throw std::invalid_argument("unknown gate '" + std::string(text) + "'");
}

const std::vector<GateKind> &single_qubit_clifford_word(unsigned index) {
    const auto &table = clifford_table();
    if (index >= table.words.size()) throw std::out_of_range("single-qubit Clifford index " + std::to_string(index));
    return table.words[index];
}

CliffordCircuit::CliffordCircuit(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("CliffordCircuit: n must be in [1, 64]");
}

CliffordCircuit::CliffordCircuit(std::size_t n, std::vector<Gate> gates) : CliffordCircuit(n) {
    for (const auto &g : gates) add(g);
}

CliffordCircuit &CliffordCircuit::add(Gate gate) {
    check_qubit(n_, gate.q0, "gate");
    if (gate.kind == GateKind::CZ || gate.kind == GateKind::CNOT) {
        check_qubit(n_, gate.q1, "gate");
        if (gate.q0 == gate.q1) throw std::invalid_argument("two-qubit gate on a single qubit");
    } else {
        gate.q1 = 0;
    }
    if (gate.kind == GateKind::Clifford1) {
        if (gate.index >= kSingleQubitCliffords) throw std::out_of_range("single-qubit Clifford index out of range");
    } else {
        gate.index = 0;
    }
    gates_.push_back(gate);
    return *this;
}

CliffordCircuit &CliffordCircuit::append(const CliffordCircuit &other) {
    if (other.n_ != n_) throw std::invalid_argument("append: qubit counts differ");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

// ---------------------------------------------------------------- Pauli

PauliOperator::PauliOperator(std::size_t n, std::uint64_t x, std::uint64_t z, int sign)
    : n_(n), x_(x), z_(z), sign_(sign) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("PauliOperator: n must be in [1, 64]");
    if ((x | z) & ~full_mask(n)) throw std::invalid_argument("PauliOperator: bits outside the register");
    if (sign != 1 && sign != -1) throw std::invalid_argument("PauliOperator: sign must be +1 or -1");
}

PauliOperator PauliOperator::parse(std::string_view text) {
    int sign = +1;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        sign = text.front() == '-' ? -1 : +1;
        text.remove_prefix(1);
    }
    const std::size_t n = text.size();
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("Pauli string must have 1..64 letters");
    std::uint64_t x = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t m = qubit_mask(n, i + 1);
        switch (text[i]) {
            case 'I':
                break;
            case 'X':
                x |= m;
                break;
            case 'Y':
                x |= m;
                z |= m;
                break;
            case 'Z':
                z |= m;
                break;
            default:
                throw std::invalid_argument("bad Pauli letter '" + std::string(1, text[i]) + "'");
        }
    }
    return PauliOperator(n, x, z, sign);
}

char PauliOperator::letter(std::size_t q) const {
    check_qubit(n_, q, "PauliOperator::letter");
    const std::uint64_t m = qubit_mask(n_, q);
    const bool a = x_ & m, b = z_ & m;
    return a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
}

std::size_t PauliOperator::weight() const {
    return popcount(x_ | z_);
}

std::vector<std::size_t> PauliOperator::support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 1; q <= n_; ++q) {
        if ((x_ | z_) & qubit_mask(n_, q)) out.push_back(q);
    }
    return out;
}

std::string PauliOperator::str() const {
    std::string s(1, sign_ < 0 ? '-' : '+');
    for (std::size_t q = 1; q <= n_; ++q) s.push_back(letter(q));
    return s;
}

PauliString PauliString::from(const PauliOperator &p) {
    return {p.x(), p.z(), (p.sign() < 0 ? 2u : 0u) + popcount(p.x() & p.z())};
}

PauliOperator PauliString::to_operator(std::size_t n) const {
    // X^a Z^a = -i Y, so the operator phase is i^(k - #Y).
    const unsigned e = (k + 4 * 64 - popcount(x & z)) % 4;
    if (e % 2) throw std::logic_error("Pauli with imaginary phase at the Hermitian boundary");
    return PauliOperator(n, x, z, e == 0 ? +1 : -1);
}

bool PauliString::commutes_with(const PauliString &o) const {
    return popcount((x & o.z) ^ (z & o.x)) % 2 == 0;
}

PauliString multiply(const PauliString &lhs, const PauliString &rhs) {
    return {lhs.x ^ rhs.x, lhs.z ^ rhs.z, (lhs.k + rhs.k + 2 * popcount(lhs.z & rhs.x)) % 4};
}

// ---------------------------------------------------------------- Tableau

Tableau::Tableau(std::size_t n) : n_(n), rows_(2 * n) {
    if (n == 0 || n > kMaxQubits) throw std::invalid_argument("Tableau: n must be in [1, 64]");
    for (std::size_t q = 1; q <= n; ++q) {
        rows_[q - 1] = {qubit_mask(n, q), 0, 0};
        rows_[n + q - 1] = {0, qubit_mask(n, q), 0};
    }
}

void Tableau::conjugate(PauliString &p, const Gate &g) const {
    const std::uint64_t m = qubit_mask(n_, g.q0);
    switch (g.kind) {
        case GateKind::CNOT:
            conj_cnot(p, m, qubit_mask(n_, g.q1));
            break;
        case GateKind::CZ: {
            const std::uint64_t t = qubit_mask(n_, g.q1);
            conj_h(p, t);
            conj_cnot(p, m, t);
            conj_h(p, t);
            break;
        }
        case GateKind::Clifford1:
            for (GateKind e : single_qubit_clifford_word(g.index)) conj_elementary(p, e, m);
            break;
        default:
            conj_elementary(p, g.kind, m);
    }
    p.k %= 4;
}

void Tableau::apply(const Gate &gate) {
    if (gate.q0 < 1 || gate.q0 > n_ || gate.q1 > n_) throw std::out_of_range("Tableau::apply: qubit out of range");
    for (auto &row : rows_) conjugate(row, gate);
}

void Tableau::apply(const CliffordCircuit &circuit) {
    if (circuit.num_qubits() != n_) throw std::invalid_argument("Tableau::apply: circuit width differs");
    for (const auto &g : circuit.gates()) apply(g);
}

std::vector<PauliOperator> Tableau::stabilizer_generators() const {
    std::vector<PauliOperator> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) out.push_back(stabilizer(i).to_operator(n_));
    return out;
}

PauliOperator Tableau::stabilizer_product(std::uint64_t subset) const {
    PauliString acc;
    for (std::size_t i = 0; i < n_; ++i) {
        if (subset >> i & 1) acc = multiply(acc, stabilizer(i));
    }
    return acc.to_operator(n_);
}

bool Tableau::is_valid() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!stabilizer(i).commutes_with(stabilizer(j))) return false;
            if (!destabilizer(i).commutes_with(destabilizer(j))) return false;
            if (destabilizer(i).commutes_with(stabilizer(j)) != (i != j)) return false;
        }
        // Hermitian: each Y letter carries one factor of i.
        if ((stabilizer(i).k + std::popcount(stabilizer(i).x & stabilizer(i).z)) % 2) return false;
        (void)stabilizer(i).to_operator(n_);
    }
    // Symplectic rank over the 2n-bit (x, z) vectors.
    std::vector<unsigned __int128> vecs;
    for (const auto &r : rows_) vecs.push_back((static_cast<unsigned __int128>(r.x) << 64) | r.z);
    std::size_t rank = 0;
    for (int bit = 127; bit >= 0 && rank < vecs.size(); --bit) {
        const unsigned __int128 m = static_cast<unsigned __int128>(1) << bit;
        auto piv = std::find_if(vecs.begin() + static_cast<long>(rank), vecs.end(), [&](auto v) { return v & m; });
        if (piv == vecs.end()) continue;
        std::iter_swap(vecs.begin() + static_cast<long>(rank), piv);
        for (std::size_t r = 0; r < vecs.size(); ++r) {
            if (r != rank && (vecs[r] & m)) vecs[r] ^= vecs[rank];
        }
        ++rank;
    }
    return rank == 2 * n_;
}

Tableau simulate(const CliffordCircuit &circuit) {
    Tableau t(circuit.num_qubits());
    t.apply(circuit);
    return t;
}

// ---------------------------------------------------------------- sampling

StabilizerSampler::StabilizerSampler(const Tableau &tableau) : n_(tableau.num_qubits()) {
    std::vector<PauliString> rows;
    for (std::size_t i = 0; i < n_; ++i) rows.push_back(tableau.stabilizer(i));

    // Row-reduce on the X part; rows past `r` end up Z-type.
    std::size_t r = 0;
    for (std::size_t q = 1; q <= n_ && r < n_; ++q) {
        const std::uint64_t m = qubit_mask(n_, q);
        std::size_t piv = r;
        while (piv < n_ && !(rows[piv].x & m)) ++piv;
        if (piv == n_) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != r && (rows[i].x & m)) rows[i] = multiply(rows[i], rows[r]);
        }
        ++r;
    }
    for (std::size_t i = 0; i < r; ++i) basis_.push_back(rows[i].x);

    // Z-type rows i^k Z^z demand (-1)^{z.x} = i^k, i.e. z.x = k/2 mod 2.
    std::vector<std::pair<std::uint64_t, bool>> eqs;
    for (std::size_t i = r; i < n_; ++i) {
        if (rows[i].k % 2) throw std::logic_error("Z-type stabilizer with imaginary phase");
        eqs.emplace_back(rows[i].z, rows[i].k == 2);
    }
    std::vector<std::uint64_t> pivots;
    std::size_t e = 0;
    for (std::size_t q = 1; q <= n_ && e < eqs.size(); ++q) {
        const std::uint64_t m = qubit_mask(n_, q);
        std::size_t piv = e;
        while (piv < eqs.size() && !(eqs[piv].first & m)) ++piv;
        if (piv == eqs.size()) continue;
        std::swap(eqs[e], eqs[piv]);
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            if (i != e && (eqs[i].first & m)) {
                eqs[i].first ^= eqs[e].first;
                eqs[i].second ^= eqs[e].second;
            }
        }
        pivots.push_back(m);
        ++e;
    }
    if (e != eqs.size()) throw std::logic_error("dependent stabilizer generators");
    // Reduced form: each equation has a unique pivot, so free bits at 0 fix it.
    for (std::size_t i = 0; i < e; ++i) {
        if (eqs[i].second) offset_ |= pivots[i];
    }
}

std::uint64_t StabilizerSampler::sample(Rng &rng) const {
    std::uint64_t x = offset_;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i % 64 == 0) bits = rng();
        if (bits >> (i % 64) & 1) x ^= basis_[i];
    }
    return x;
}

// ---------------------------------------------------------------- circuits

CliffordCircuit graph_state_circuit(std::size_t n) {
    if (n < 2) throw std::invalid_argument("graph_state_circuit: n must be at least 2");
    CliffordCircuit c(n);
    for (std::size_t q = 1; q <= n; ++q) c.h(q);
    for (std::size_t q = 1; q < n; ++q) c.cz(q, q + 1);
    return c;
}

CnotLayer random_matching(const std::vector<QubitPair> &coupling, Rng &rng) {
    std::vector<QubitPair> edges = coupling;
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[uniform_index(rng, i)]);
    std::vector<std::size_t> used;
    CnotLayer layer;
    for (auto [a, b] : edges) {
        if (std::find(used.begin(), used.end(), a) != used.end()) continue;
        if (std::find(used.begin(), used.end(), b) != used.end()) continue;
        used.push_back(a);
        used.push_back(b);
        layer.push_back(rng() & 1 ? QubitPair{b, a} : QubitPair{a, b});
    }
    return layer;
}

CliffordCircuit random_clifford_circuit(std::size_t n, std::size_t depth, const std::vector<QubitPair> &coupling,
                                        Rng &rng, const std::vector<CnotLayer> &patterns) {
    for (auto [a, b] : coupling) {
        check_qubit(n, a, "coupling");
        check_qubit(n, b, "coupling");
        if (a == b) throw std::invalid_argument("coupling edge joins a qubit to itself");
    }
    CliffordCircuit c(n);
    std::size_t cnot_layers = 0;
    for (std::size_t layer = 0; layer < depth; ++layer) {
        if (layer % 2 == 0) {
            for (std::size_t q = 1; q <= n; ++q) c.clifford1(q, static_cast<unsigned>(uniform_index(rng, kSingleQubitCliffords)));
            continue;
        }
        const CnotLayer cnots = cnot_layers < patterns.size() ? patterns[cnot_layers] : random_matching(coupling, rng);
        ++cnot_layers;
        std::vector<bool> busy(n + 1, false);
        for (auto [ctl, tgt] : cnots) {
            check_qubit(n, ctl, "CNOT layer");
            check_qubit(n, tgt, "CNOT layer");
            if (busy[ctl] || busy[tgt]) {
                throw std::invalid_argument("overlapping CNOTs in layer " + std::to_string(cnot_layers));
            }
            busy[ctl] = busy[tgt] = true;
            c.cnot(ctl, tgt);
        }
    }
    return c;
}

std::vector<QubitPair> coupling_map_20q() {
    static const std::vector<QubitPair> zero_based = {
        {0, 1},   {1, 2},   {2, 3},   {3, 4},   {0, 5},   {4, 9},   {5, 6},   {6, 7},
        {7, 8},   {8, 9},   {5, 10},  {7, 12},  {9, 14},  {10, 11}, {11, 12}, {12, 13},
        {13, 14}, {10, 15}, {14, 19}, {15, 16}, {16, 17}, {17, 18}, {18, 19},
    };
    std::vector<QubitPair> out;
    for (auto [a, b] : zero_based) out.emplace_back(a + 1, b + 1);
    return out;
}

std::vector<QubitPair> line_coupling(std::size_t n) {
    std::vector<QubitPair> out;
    for (std::size_t q = 1; q < n; ++q) out.emplace_back(q, q + 1);
    return out;
}

// ---------------------------------------------------------------- stabilizer group

PauliOperator stabilizer_sample(const Tableau &tableau, Rng &rng) {
    return tableau.stabilizer_product(rng() & full_mask(tableau.num_qubits()));
}

PauliOperator stabilizer_sample_weight(const Tableau &tableau, std::size_t weight, Rng &rng, std::size_t max_tries) {
    const std::size_t n = tableau.num_qubits();
    if (weight > n) throw std::invalid_argument("requested weight exceeds the register");
    if (weight == 0) return PauliOperator::identity(n);
    std::vector<std::size_t> idx(n);
    for (std::size_t t = 0; t < max_tries; ++t) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const std::size_t size = 1 + uniform_index(rng, n);
        std::uint64_t subset = 0;
        for (std::size_t i = 0; i < size; ++i) {
            std::swap(idx[i], idx[i + uniform_index(rng, n - i)]);
            subset |= std::uint64_t{1} << idx[i];
        }
        PauliOperator p = tableau.stabilizer_product(subset);
        if (p.weight() == weight) return p;
    }
    throw std::runtime_error("no stabilizer of weight " + std::to_string(weight) + " found in " +
                             std::to_string(max_tries) + " proposals");
}

std::vector<PauliOperator> enumerate_stabilizers(const Tableau &tableau) {
    const std::size_t n = tableau.num_qubits();
    if (n > 20) throw std::invalid_argument("enumerate_stabilizers: n must be at most 20");
    std::vector<PauliOperator> out;
    out.reserve(std::size_t{1} << n);
    PauliString acc;
    out.push_back(acc.to_operator(n));
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        acc = multiply(acc, tableau.stabilizer(static_cast<std::size_t>(std::countr_zero(i))));
        out.push_back(acc.to_operator(n));
    }
    return out;
}

MeasurementSetting pauli_to_measurement(const PauliOperator &p) {
    const std::size_t n = p.num_qubits();
    CliffordCircuit rotation(n);
    for (std::size_t q = 1; q <= n; ++q) {
        switch (p.letter(q)) {
            case 'X':
                rotation.h(q);
                break;
            case 'Y':
                // S^dagger = S Z.
                rotation.z(q).s(q).h(q);
                break;
            default:
                break;
        }
    }
    return {std::move(rotation), DiagonalObservable(n, p.support(), p.sign())};
}

ShotSet sample_ideal(const CliffordCircuit &circuit, const CliffordCircuit &rotation, std::size_t shots, Rng &rng) {
    Tableau t = simulate(circuit);
    t.apply(rotation);
    const StabilizerSampler sampler(t);
    std::vector<std::uint64_t> words(shots);
    for (auto &w : words) w = sampler.sample(rng);
    return ShotSet(circuit.num_qubits(), std::move(words));
}

}  // namespace readmit
