// Copyright 2026 The qmon Authors
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

#ifndef QMON_PAULI_H
#define QMON_PAULI_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmon/gf2.h"

namespace qmon {

/// Single-qubit Pauli letter. The numeric value packs (x, z) as x | z << 1.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);

/// A signless n-qubit Pauli operator in symplectic form.
///
/// Phases are never tracked: Y is stored as (x=1, z=1) and the product of two
/// operators is componentwise XOR. Every quantity this library reports
/// (verdicts, entropies, logical classes) is invariant under signs.
class PauliOp {
   public:
    PauliOp() = default;
    explicit PauliOp(size_t n) : x_(n), z_(n) {
    }
    PauliOp(BitVec x, BitVec z);

    /// Parses a string over {I,X,Y,Z} ('_' is accepted for I). Qubit 0 first.
    static PauliOp from_string(std::string_view text);
    /// The single-qubit operator `p` on `qubit`, identity elsewhere.
    static PauliOp single(size_t n, size_t qubit, Pauli p);

    size_t num_qubits() const {
        return x_.size();
    }
    const BitVec &x() const {
        return x_;
    }
    const BitVec &z() const {
        return z_;
    }
    BitVec &x() {
        return x_;
    }
    BitVec &z() {
        return z_;
    }

    Pauli at(size_t q) const {
        return static_cast<Pauli>(uint8_t(x_.get(q)) | uint8_t(z_.get(q)) << 1);
    }
    void set(size_t q, Pauli p) {
        x_.set(q, uint8_t(p) & 1);
        z_.set(q, uint8_t(p) & 2);
    }

    bool is_identity() const {
        return x_.none() && z_.none();
    }
    size_t weight() const;
    /// Qubits where the operator acts non-trivially, ascending.
    std::vector<size_t> support() const;

    PauliOp &operator*=(const PauliOp &other);
    friend PauliOp operator*(PauliOp a, const PauliOp &b) {
        return a *= b;
    }
    bool operator==(const PauliOp &other) const = default;

    /// Stacked symplectic vector (x | z) of length 2n.
    BitVec symplectic() const;
    static PauliOp from_symplectic(const BitVec &v);

    /// Tensor product `*this (x) tail`.
    PauliOp tensor(const PauliOp &tail) const;
    /// Restriction to qubits [start, start + length).
    PauliOp slice(size_t start, size_t length) const;

    std::string str() const;

   private:
    BitVec x_;
    BitVec z_;
};

bool commutes(const PauliOp &a, const PauliOp &b);
/// Symplectic form <a, b> = a.x . b.z + a.z . b.x (true means anticommute).
bool symplectic_product(const PauliOp &a, const PauliOp &b);
PauliOp multiply(const PauliOp &a, const PauliOp &b);

enum class GroupRole { Generic, Stabilizer, Gauge, Measured, LogicalBasis };

const char *role_name(GroupRole role);

/// An independent list of Pauli operators on a common number of qubits.
struct GeneratorSet {
    size_t num_qubits = 0;
    GroupRole role = GroupRole::Generic;
    std::vector<PauliOp> gens;

    GeneratorSet() = default;
    GeneratorSet(size_t n, GroupRole role, std::vector<PauliOp> gens = {});

    size_t size() const {
        return gens.size();
    }
    bool empty() const {
        return gens.empty();
    }

    /// Rows are the stacked symplectic vectors of the generators.
    BitMatrix symplectic_matrix() const;
    /// Whether every pair of generators commutes.
    bool is_abelian() const;
    /// Whether the generators are GF(2)-independent.
    bool is_independent() const;
    std::vector<std::string> strs() const;
};

/// Maximal independent sublist, greedy in input order.
GeneratorSet independent_subset(std::span<const PauliOp> ops, size_t n, GroupRole role = GroupRole::Generic);

/// Generators of { g in <group> : g commutes with every constraint }.
GeneratorSet centralizer_intersection(const GeneratorSet &group, const GeneratorSet &constraints);

/// Signless membership of `p` in the group generated by `group`.
bool group_contains(const GeneratorSet &group, const PauliOp &p);

/// Rank of the span of `ops` (signless).
size_t group_rank(std::span<const PauliOp> ops, size_t n);

/// Matrix whose (i, j) entry is <rows[i], cols[j]>.
BitMatrix commutation_matrix(std::span<const PauliOp> rows, std::span<const PauliOp> cols);

}  // namespace qmon

#endif
