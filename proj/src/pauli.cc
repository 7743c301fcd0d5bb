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

#include "qmon/pauli.h"

#include "qmon/errors.h"

namespace qmon {

namespace {

void require_same_n(size_t a, size_t b, const char *what) {
    if (a != b) {
        throw ContractViolation(std::string(what) + ": qubit count mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

PauliOp::PauliOp(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
    require_same_n(x_.size(), z_.size(), "PauliOp");
}

PauliOp PauliOp::from_string(std::string_view text) {
    PauliOp p(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.set(q, Pauli::X);
                break;
            case 'Y':
                p.set(q, Pauli::Y);
                break;
            case 'Z':
                p.set(q, Pauli::Z);
                break;
            default:
                throw ContractViolation("PauliOp::from_string: unexpected character '" + std::string(1, text[q]) +
                                        "' in \"" + std::string(text) + "\"");
        }
    }
    return p;
}

PauliOp PauliOp::single(size_t n, size_t qubit, Pauli p) {
    if (qubit >= n) {
        throw ContractViolation("PauliOp::single: qubit out of range");
    }
    PauliOp op(n);
    op.set(qubit, p);
    return op;
}

size_t PauliOp::weight() const {
    return (x_ | z_).popcount();
}

std::vector<size_t> PauliOp::support() const {
    std::vector<size_t> out;
    auto xw = x_.words();
    auto zw = z_.words();
    for (size_t w = 0; w < xw.size(); w++) {
        uint64_t bits = xw[w] | zw[w];
        while (bits) {
            out.push_back(w * kWordBits + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return out;
}

PauliOp &PauliOp::operator*=(const PauliOp &other) {
    require_same_n(num_qubits(), other.num_qubits(), "PauliOp multiply");
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

BitVec PauliOp::symplectic() const {
    return x_.concat(z_);
}

PauliOp PauliOp::from_symplectic(const BitVec &v) {
    if (v.size() % 2) {
        throw ContractViolation("PauliOp::from_symplectic: odd length");
    }
    size_t n = v.size() / 2;
    return PauliOp(v.slice(0, n), v.slice(n, n));
}

PauliOp PauliOp::tensor(const PauliOp &tail) const {
    return PauliOp(x_.concat(tail.x_), z_.concat(tail.z_));
}

PauliOp PauliOp::slice(size_t start, size_t length) const {
    return PauliOp(x_.slice(start, length), z_.slice(start, length));
}

std::string PauliOp::str() const {
    std::string out(num_qubits(), 'I');
    for (size_t q = 0; q < num_qubits(); q++) {
        out[q] = pauli_char(at(q));
    }
    return out;
}

bool symplectic_product(const PauliOp &a, const PauliOp &b) {
    require_same_n(a.num_qubits(), b.num_qubits(), "commutes");
    auto ax = a.x().words();
    auto az = a.z().words();
    auto bx = b.x().words();
    auto bz = b.z().words();
    uint64_t acc = 0;
    for (size_t w = 0; w < ax.size(); w++) {
        acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
    }
    return std::popcount(acc) & 1;
}

bool commutes(const PauliOp &a, const PauliOp &b) {
    return !symplectic_product(a, b);
}

PauliOp multiply(const PauliOp &a, const PauliOp &b) {
    return a * b;
}

const char *role_name(GroupRole role) {
    switch (role) {
        case GroupRole::Generic:
            return "generic";
        case GroupRole::Stabilizer:
            return "stabilizer";
        case GroupRole::Gauge:
            return "gauge";
        case GroupRole::Measured:
            return "measured";
        case GroupRole::LogicalBasis:
            return "logical-basis";
    }
    return "?";
}

GeneratorSet::GeneratorSet(size_t n, GroupRole role, std::vector<PauliOp> gens)
    : num_qubits(n), role(role), gens(std::move(gens)) {
    for (const auto &g : this->gens) {
        require_same_n(g.num_qubits(), n, "GeneratorSet");
    }
}

BitMatrix GeneratorSet::symplectic_matrix() const {
    BitMatrix m(gens.size(), 2 * num_qubits);
    for (size_t r = 0; r < gens.size(); r++) {
        m.set_row(r, gens[r].symplectic());
    }
    return m;
}

bool GeneratorSet::is_abelian() const {
    for (size_t i = 0; i < gens.size(); i++) {
        for (size_t j = i + 1; j < gens.size(); j++) {
            if (!commutes(gens[i], gens[j])) {
                return false;
            }
        }
    }
    return true;
}

bool GeneratorSet::is_independent() const {
    return rank(symplectic_matrix()) == gens.size();
}

std::vector<std::string> GeneratorSet::strs() const {
    std::vector<std::string> out;
    out.reserve(gens.size());
    for (const auto &g : gens) {
        out.push_back(g.str());
    }
    return out;
}

GeneratorSet independent_subset(std::span<const PauliOp> ops, size_t n, GroupRole role) {
    // Incremental echelon basis: each kept vector is reduced against earlier
    // pivots so a new vector is dependent iff it reduces to zero.
    GeneratorSet out(n, role);
    std::vector<BitVec> basis;
    std::vector<size_t> pivots;
    for (const auto &op : ops) {
        require_same_n(op.num_qubits(), n, "independent_subset");
        BitVec v = op.symplectic();
        for (size_t i = 0; i < basis.size(); i++) {
            if (v.get(pivots[i])) {
                v ^= basis[i];
            }
        }
        if (v.none()) {
            continue;
        }
        size_t pivot = 0;
        while (!v.get(pivot)) {
            pivot++;
        }
        for (auto &b : basis) {
            if (b.get(pivot)) {
                b ^= v;
            }
        }
        basis.push_back(std::move(v));
        pivots.push_back(pivot);
        out.gens.push_back(op);
    }
    return out;
}

BitMatrix commutation_matrix(std::span<const PauliOp> rows, std::span<const PauliOp> cols) {
    BitMatrix m(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < cols.size(); j++) {
            if (symplectic_product(rows[i], cols[j])) {
                m.set(i, j, true);
            }
        }
    }
    return m;
}

GeneratorSet centralizer_intersection(const GeneratorSet &group, const GeneratorSet &constraints) {
    require_same_n(group.num_qubits, constraints.num_qubits, "centralizer_intersection");
    if (constraints.empty()) {
        return group;
    }
    BitMatrix a = commutation_matrix(constraints.gens, group.gens);
    std::vector<PauliOp> products;
    for (const auto &v : nullspace_basis(a)) {
        PauliOp p(group.num_qubits);
        for (size_t j = 0; j < v.size(); j++) {
            if (v.get(j)) {
                p *= group.gens[j];
            }
        }
        products.push_back(std::move(p));
    }
    return independent_subset(products, group.num_qubits, group.role);
}

bool group_contains(const GeneratorSet &group, const PauliOp &p) {
    require_same_n(group.num_qubits, p.num_qubits(), "group_contains");
    if (p.is_identity()) {
        return true;
    }
    if (group.empty()) {
        return false;
    }
    return in_rowspace(group.symplectic_matrix(), p.symplectic());
}

size_t group_rank(std::span<const PauliOp> ops, size_t n) {
    BitMatrix m(ops.size(), 2 * n);
    for (size_t r = 0; r < ops.size(); r++) {
        m.set_row(r, ops[r].symplectic());
    }
    return rank(std::move(m));
}

}  // namespace qmon
