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

#include "qmon/choi.h"

#include <algorithm>

#include "qmon/errors.h"

namespace qmon {

namespace {

// Embeds an n-qubit operator into the first n of `total` qubits.
PauliOp embed(const PauliOp &p, size_t total) {
    return p.tensor(PauliOp(total - p.num_qubits()));
}

std::vector<bool> membership(size_t n_total, std::span<const size_t> region) {
    std::vector<bool> in(n_total, false);
    for (size_t q : region) {
        if (q >= n_total) {
            throw ContractViolation("region qubit out of range");
        }
        in[q] = true;
    }
    return in;
}

// Rows are the generators restricted to the qubits where `keep` is true.
BitMatrix restricted(const GeneratorSet &group, const std::vector<bool> &keep) {
    std::vector<size_t> cols;
    for (size_t q = 0; q < keep.size(); q++) {
        if (keep[q]) {
            cols.push_back(q);
        }
    }
    BitMatrix m(group.size(), 2 * cols.size());
    for (size_t r = 0; r < group.size(); r++) {
        const auto &g = group.gens[r];
        for (size_t c = 0; c < cols.size(); c++) {
            if (g.x().get(cols[c])) {
                m.set(r, c, true);
            }
            if (g.z().get(cols[c])) {
                m.set(r, cols.size() + c, true);
            }
        }
    }
    return m;
}

// Generators of the subgroup supported inside `region`.
std::vector<PauliOp> supported_subgroup(const StabilizerState &state, std::span<const size_t> region) {
    auto in = membership(state.n_total, region);
    std::vector<bool> outside(in.size());
    for (size_t q = 0; q < in.size(); q++) {
        outside[q] = !in[q];
    }
    std::vector<PauliOp> out;
    for (const auto &v : nullspace_basis(restricted(state.group, outside).transposed())) {
        PauliOp p(state.n_total);
        for (size_t i = 0; i < v.size(); i++) {
            if (v.get(i)) {
                p *= state.group.gens[i];
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::vector<size_t> StabilizerState::region(Region r) const {
    std::vector<size_t> out;
    for (size_t q = 0; q < labels.size(); q++) {
        if (labels[q] == r) {
            out.push_back(q);
        }
    }
    return out;
}

std::vector<std::pair<PauliOp, PauliOp>> gauge_qubit_pairs(const CodeSpec &code) {
    std::vector<PauliOp> pool = code.gauge_gens.gens;
    std::vector<std::pair<PauliOp, PauliOp>> pairs;
    while (!pool.empty()) {
        PauliOp a = pool.front();
        pool.erase(pool.begin());
        auto partner = std::find_if(pool.begin(), pool.end(), [&](const PauliOp &b) { return !commutes(a, b); });
        if (partner == pool.end()) {
            continue;  // central: a stabilizer
        }
        PauliOp b = *partner;
        pool.erase(partner);
        for (auto &c : pool) {
            bool with_a = symplectic_product(c, a);
            bool with_b = symplectic_product(c, b);
            if (with_a) {
                c *= b;
            }
            if (with_b) {
                c *= a;
            }
        }
        pairs.emplace_back(std::move(a), std::move(b));
    }
    if (pairs.size() != code.g) {
        throw ContractViolation("gauge group has " + std::to_string(pairs.size()) + " gauge qubits, expected " +
                                std::to_string(code.g));
    }
    return pairs;
}

StabilizerState build_choi(const CodeSpec &code) {
    if (code.is_subsystem()) {
        throw ContractViolation("build_choi: subsystem code, use build_choi_subsystem");
    }
    size_t n = code.n, k = code.k, total = n + k;
    StabilizerState st;
    st.n_total = total;
    st.labels.assign(n, Region::A);
    st.labels.resize(total, Region::R);
    std::vector<PauliOp> gens;
    for (const auto &s : code.stabilizers.gens) {
        gens.push_back(embed(s, total));
    }
    for (size_t j = 0; j < k; j++) {
        gens.push_back(code.logical_x[j].tensor(PauliOp::single(k, j, Pauli::X)));
        gens.push_back(code.logical_z[j].tensor(PauliOp::single(k, j, Pauli::Z)));
    }
    st.group = GeneratorSet(total, GroupRole::Stabilizer, std::move(gens));
    return st;
}

StabilizerState build_choi_subsystem(const CodeSpec &code) {
    if (!code.is_subsystem()) {
        throw ContractViolation("build_choi_subsystem: code has no gauge qubits");
    }
    size_t n = code.n, g = code.g, k = code.k, total = n + g + k;
    StabilizerState st;
    st.n_total = total;
    st.labels.assign(n, Region::A);
    st.labels.resize(n + g, Region::RGauge);
    st.labels.resize(total, Region::RBare);
    std::vector<PauliOp> gens;
    for (const auto &s : code.stabilizers.gens) {
        gens.push_back(embed(s, total));
    }
    auto pairs = gauge_qubit_pairs(code);
    for (size_t i = 0; i < g; i++) {
        gens.push_back(pairs[i].first.tensor(PauliOp::single(g, i, Pauli::X)).tensor(PauliOp(k)));
        gens.push_back(pairs[i].second.tensor(PauliOp::single(g, i, Pauli::Z)).tensor(PauliOp(k)));
    }
    for (size_t j = 0; j < k; j++) {
        gens.push_back(code.logical_x[j].tensor(PauliOp(g)).tensor(PauliOp::single(k, j, Pauli::X)));
        gens.push_back(code.logical_z[j].tensor(PauliOp(g)).tensor(PauliOp::single(k, j, Pauli::Z)));
    }
    st.group = GeneratorSet(total, GroupRole::Stabilizer, std::move(gens));
    return st;
}

StabilizerState apply_measurements(const StabilizerState &state, const GeneratorSet &measured) {
    if (measured.num_qubits != state.n_total) {
        throw ContractViolation("apply_measurements: measured operators act on the wrong number of qubits");
    }
    if (!measured.is_abelian()) {
        throw ContractViolation("apply_measurements: measured operators must commute");
    }
    if (measured.empty()) {
        return state;
    }
    auto kept = centralizer_intersection(state.group, measured);
    std::vector<PauliOp> all = std::move(kept.gens);
    all.insert(all.end(), measured.gens.begin(), measured.gens.end());
    StabilizerState out = state;
    out.group = independent_subset(all, state.n_total, GroupRole::Stabilizer);
    return out;
}

StabilizerState apply_measurements_sequential(const StabilizerState &state, const GeneratorSet &measured) {
    StabilizerState cur = state;
    for (const auto &m : measured.gens) {
        cur = apply_measurements(cur, GeneratorSet(state.n_total, GroupRole::Measured, {m}));
    }
    return cur;
}

StabilizerState apply_pattern(const StabilizerState &state, const MeasurementPattern &pattern) {
    size_t n = state.region(Region::A).size();
    if (pattern.n() != n) {
        throw ContractViolation("apply_pattern: pattern length differs from |A|");
    }
    GeneratorSet m(state.n_total, GroupRole::Measured);
    for (size_t q : pattern.measured_set()) {
        m.gens.push_back(PauliOp::single(state.n_total, q, pattern[q]));
    }
    return apply_measurements(state, m);
}

size_t region_entropy(const StabilizerState &state, std::span<const size_t> region) {
    auto in = membership(state.n_total, region);
    size_t size = std::count(in.begin(), in.end(), true);
    std::vector<bool> outside(in.size());
    for (size_t q = 0; q < in.size(); q++) {
        outside[q] = !in[q];
    }
    size_t r = state.group.size();
    size_t supported = r - rank(restricted(state.group, outside));
    return size - supported;
}

size_t mutual_information(const StabilizerState &state, std::span<const size_t> a, std::span<const size_t> b) {
    auto in_a = membership(state.n_total, a);
    for (size_t q : b) {
        if (q < in_a.size() && in_a[q]) {
            throw ContractViolation("mutual_information: regions overlap");
        }
    }
    std::vector<size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    return region_entropy(state, a) + region_entropy(state, b) - region_entropy(state, ab);
}

bool subsystem_preserved(const StabilizerState &state) {
    auto rg = state.region(Region::RGauge);
    auto rb = state.region(Region::RBare);
    if (rb.empty() || !state.region(Region::R).empty()) {
        throw ContractViolation("subsystem_preserved: state lacks subsystem region labels");
    }
    std::vector<size_t> refs = rg;
    refs.insert(refs.end(), rb.begin(), rb.end());
    for (const auto &p : supported_subgroup(state, refs)) {
        for (size_t q : rb) {
            if (p.at(q) != Pauli::I) {
                return false;
            }
        }
    }
    return true;
}

size_t choi_mutual_information(const CodeSpec &code, const MeasurementPattern &pattern) {
    if (code.is_subsystem()) {
        auto st = apply_pattern(build_choi_subsystem(code), pattern);
        return mutual_information(st, st.region(Region::A), st.region(Region::RBare));
    }
    auto st = apply_pattern(build_choi(code), pattern);
    return mutual_information(st, st.region(Region::A), st.region(Region::R));
}

bool choi_preserved(const CodeSpec &code, const MeasurementPattern &pattern) {
    if (code.is_subsystem()) {
        return subsystem_preserved(apply_pattern(build_choi_subsystem(code), pattern));
    }
    return choi_mutual_information(code, pattern) == 2 * code.k;
}

bool same_group(const GeneratorSet &a, const GeneratorSet &b) {
    if (a.num_qubits != b.num_qubits) {
        return false;
    }
    for (const auto &g : a.gens) {
        if (!group_contains(b, g)) {
            return false;
        }
    }
    for (const auto &g : b.gens) {
        if (!group_contains(a, g)) {
            return false;
        }
    }
    return true;
}

}  // namespace qmon
