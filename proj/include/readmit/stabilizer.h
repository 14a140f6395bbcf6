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

#ifndef READMIT_STABILIZER_H
#define READMIT_STABILIZER_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "readmit/bitstring.h"
#include "readmit/observable.h"
#include "readmit/random.h"
#include "readmit/shots.h"

namespace readmit {

enum class GateKind {
    H,
    S,
    X,
    Z,
    CZ,
    CNOT,
    Clifford1,  // single-qubit Clifford by canonical index 0..23
};

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

struct Gate {
    GateKind kind = GateKind::H;
    /// 1-based qubits; `q1` is the target of CNOT / second qubit of CZ.
    std::size_t q0 = 0;
    std::size_t q1 = 0;
    /// Element index for Clifford1.
    unsigned index = 0;

    friend bool operator==(const Gate &, const Gate &) = default;
};

class CliffordCircuit {
   public:
    CliffordCircuit() = default;
    explicit CliffordCircuit(std::size_t n);
    CliffordCircuit(std::size_t n, std::vector<Gate> gates);

    std::size_t num_qubits() const {
        return n_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    /// Validates and appends one gate.
    CliffordCircuit &add(Gate gate);
    CliffordCircuit &h(std::size_t q) {
        return add({GateKind::H, q});
    }
    CliffordCircuit &s(std::size_t q) {
        return add({GateKind::S, q});
    }
    CliffordCircuit &x(std::size_t q) {
        return add({GateKind::X, q});
    }
    CliffordCircuit &z(std::size_t q) {
        return add({GateKind::Z, q});
    }
    CliffordCircuit &cz(std::size_t a, std::size_t b) {
        return add({GateKind::CZ, a, b});
    }
    CliffordCircuit &cnot(std::size_t c, std::size_t t) {
        return add({GateKind::CNOT, c, t});
    }
    CliffordCircuit &clifford1(std::size_t q, unsigned index) {
        return add({GateKind::Clifford1, q, 0, index});
    }
    CliffordCircuit &append(const CliffordCircuit &other);

    friend bool operator==(const CliffordCircuit &, const CliffordCircuit &) = default;

   private:
    std::size_t n_ = 0;
    std::vector<Gate> gates_;
};

/// Number of single-qubit Clifford elements modulo phase.
inline constexpr unsigned kSingleQubitCliffords = 24;

/// H/S word of the single-qubit Clifford with the given canonical index.
/// Index 0 is the identity; the order is breadth-first over words in H and S
/// (H tried before S), which fixes the numbering.
const std::vector<GateKind> &single_qubit_clifford_word(unsigned index);

/// Hermitian Pauli operator with a +1 or -1 phase.
class PauliOperator {
   public:
    PauliOperator() = default;
    /// x/z words use the packed BitString layout.
    PauliOperator(std::size_t n, std::uint64_t x, std::uint64_t z, int sign = +1);
    static PauliOperator identity(std::size_t n) {
        return PauliOperator(n, 0, 0, +1);
    }
    /// Parses "+XZIIY", "-YZ" or "XX" (implicit +).
    static PauliOperator parse(std::string_view text);

    std::size_t num_qubits() const {
        return n_;
    }
    std::uint64_t x() const {
        return x_;
    }
    std::uint64_t z() const {
        return z_;
    }
    int sign() const {
        return sign_;
    }
    /// Letter 'I', 'X', 'Y' or 'Z' of qubit q (1-based).
    char letter(std::size_t q) const;
    std::size_t weight() const;
    std::vector<std::size_t> support() const;
    std::string str() const;

    friend bool operator==(const PauliOperator &, const PauliOperator &) = default;

   private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int sign_ = +1;
};

/// i^k X^x Z^z, the internal form closed under multiplication and Clifford
/// conjugation.
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    unsigned k = 0;  // phase exponent mod 4

    static PauliString from(const PauliOperator &p);
    /// Throws std::logic_error if the phase is +-i.
    PauliOperator to_operator(std::size_t n) const;
    bool commutes_with(const PauliString &other) const;

    friend bool operator==(const PauliString &, const PauliString &) = default;
};

/// lhs * rhs.
PauliString multiply(const PauliString &lhs, const PauliString &rhs);

/// Stabilizer tableau: n destabilizer rows followed by n stabilizer rows.
class Tableau {
   public:
    /// |0^n>.
    explicit Tableau(std::size_t n);

    std::size_t num_qubits() const {
        return n_;
    }
    void apply(const Gate &gate);
    void apply(const CliffordCircuit &circuit);

    const PauliString &destabilizer(std::size_t i) const {
        return rows_[i];
    }
    const PauliString &stabilizer(std::size_t i) const {
        return rows_[n_ + i];
    }
    std::vector<PauliOperator> stabilizer_generators() const;
    /// Product of the stabilizer generators selected by the low n bits of
    /// `subset` (bit i selects generator i).
    PauliOperator stabilizer_product(std::uint64_t subset) const;

    /// Pairwise commutation of the stabilizers, anticommutation of matched
    /// destabilizer/stabilizer pairs and full symplectic rank.
    bool is_valid() const;

   private:
    void conjugate(PauliString &p, const Gate &gate) const;

    std::size_t n_;
    std::vector<PauliString> rows_;
};

Tableau simulate(const CliffordCircuit &circuit);

/// Computational-basis outcomes of a stabilizer state: a uniform distribution
/// over the affine set offset + span(basis).
class StabilizerSampler {
   public:
    explicit StabilizerSampler(const Tableau &tableau);

    std::size_t num_qubits() const {
        return n_;
    }
    std::uint64_t offset() const {
        return offset_;
    }
    const std::vector<std::uint64_t> &basis() const {
        return basis_;
    }
    /// log2 of the support size.
    std::size_t dimension() const {
        return basis_.size();
    }
    std::uint64_t sample(Rng &rng) const;

   private:
    std::size_t n_;
    std::uint64_t offset_ = 0;
    std::vector<std::uint64_t> basis_;
};

/// H on every qubit, then CZ(j, j+1) for j = 1..n-1.
CliffordCircuit graph_state_circuit(std::size_t n);

using QubitPair = std::pair<std::size_t, std::size_t>;
using CnotLayer = std::vector<QubitPair>;

/// Random maximal matching of `coupling`, each CNOT in a random direction.
CnotLayer random_matching(const std::vector<QubitPair> &coupling, Rng &rng);

/// `depth` alternating layers starting with single-qubit Cliffords (uniform
/// over the 24 elements on every qubit) followed by CNOT layers. CNOT layers
/// come from `patterns` in order when given, else are sampled as maximal
/// matchings of `coupling`. Throws if a layer reuses a qubit.
CliffordCircuit random_clifford_circuit(std::size_t n, std::size_t depth, const std::vector<QubitPair> &coupling,
                                        Rng &rng, const std::vector<CnotLayer> &patterns = {});

/// Heavy-hex-like 20-qubit lattice (1-based), five-qubit rows joined by
/// alternating rungs.
std::vector<QubitPair> coupling_map_20q();
/// Path 1-2-...-n.
std::vector<QubitPair> line_coupling(std::size_t n);

/// Uniformly random element of the stabilizer group.
PauliOperator stabilizer_sample(const Tableau &tableau, Rng &rng);

/// Random group element of the given Pauli weight. Proposals pick a subset
/// size uniformly in [1, n] and then a uniform subset of that size, which
/// reaches low weights far more often than uniform subsets do. Throws
/// std::runtime_error if `max_tries` proposals all miss.
PauliOperator stabilizer_sample_weight(const Tableau &tableau, std::size_t weight, Rng &rng,
                                       std::size_t max_tries = 200000);

/// All 2^n group elements in Gray-code order (n <= 20).
std::vector<PauliOperator> enumerate_stabilizers(const Tableau &tableau);

struct MeasurementSetting {
    CliffordCircuit rotation;
    DiagonalObservable observable;
};

/// Basis change so that <P> equals the mean of `observable` on outcomes
/// measured after `rotation`: H for X, S^dagger then H for Y.
MeasurementSetting pauli_to_measurement(const PauliOperator &p);

/// M computational-basis shots of circuit followed by rotation.
ShotSet sample_ideal(const CliffordCircuit &circuit, const CliffordCircuit &rotation, std::size_t shots, Rng &rng);

}  // namespace readmit

#endif  // READMIT_STABILIZER_H
