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

#include "qmon/monitor.h"

#include <cmath>

#include "qmon/errors.h"
#include "qmon/rng.h"

namespace qmon {

namespace {

// Row-reduces the given rows on their first `width` columns and returns the
// trailing parts (columns [width, ncols)) of the rows whose leading part
// vanished. When `track` is set, also returns which input rows combine into
// each of them.
struct TailResult {
    std::vector<BitVec> tails;
    std::vector<std::vector<size_t>> combos;
};

TailResult kernel_tails(std::span<const BitVec *const> rows, size_t width, size_t tail, bool track) {
    size_t m = rows.size();
    size_t cols = width + tail + (track ? m : 0);
    BitMatrix mat(m, cols);
    for (size_t i = 0; i < m; i++) {
        const BitVec &src = *rows[i];
        if (!track) {
            mat.set_row(i, src);
            continue;
        }
        for (size_t c = 0; c < width + tail; c++) {
            if (src.get(c)) {
                mat.set(i, c, true);
            }
        }
        mat.set(i, width + tail + i, true);
    }
    Echelon e = row_reduce(std::move(mat), width);
    TailResult out;
    for (size_t i = e.rank(); i < m; i++) {
        BitVec t(tail);
        for (size_t c = 0; c < tail; c++) {
            if (e.reduced.get(i, width + c)) {
                t.set(c, true);
            }
        }
        out.tails.push_back(std::move(t));
        if (track) {
            std::vector<size_t> combo;
            for (size_t j = 0; j < m; j++) {
                if (e.reduced.get(i, width + tail + j)) {
                    combo.push_back(j);
                }
            }
            out.combos.push_back(std::move(combo));
        }
    }
    return out;
}

size_t span_rank(std::span<const BitVec> vs, size_t len) {
    if (vs.empty() || len == 0) {
        return 0;
    }
    return rank(BitMatrix::from_rows(vs, len));
}

BitVec make_row(const std::vector<PauliOp> &checks, const CodeSpec &code, size_t q, Pauli p) {
    size_t r = checks.size();
    size_t k = code.k;
    PauliOp single = PauliOp::single(code.n, q, p);
    BitVec row(r + 2 * k);
    for (size_t i = 0; i < r; i++) {
        if (symplectic_product(checks[i], single)) {
            row.set(i, true);
        }
    }
    for (size_t j = 0; j < k; j++) {
        if (symplectic_product(single, code.logical_z[j])) {
            row.set(r + j, true);
        }
        if (symplectic_product(single, code.logical_x[j])) {
            row.set(r + k + j, true);
        }
    }
    return row;
}

}  // namespace

MeasurementPattern MeasurementPattern::uniform(size_t n, Pauli p) {
    return MeasurementPattern(std::vector<Pauli>(n, p));
}

MeasurementPattern MeasurementPattern::from_string(std::string_view text) {
    MeasurementPattern out(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case '.':
                break;
            case 'X':
                out[q] = Pauli::X;
                break;
            case 'Y':
                out[q] = Pauli::Y;
                break;
            case 'Z':
                out[q] = Pauli::Z;
                break;
            default:
                throw ContractViolation("MeasurementPattern::from_string: unexpected character '" +
                                        std::string(1, text[q]) + "'");
        }
    }
    return out;
}

std::vector<size_t> MeasurementPattern::measured_set() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < assignment.size(); q++) {
        if (assignment[q] != Pauli::I) {
            out.push_back(q);
        }
    }
    return out;
}

size_t MeasurementPattern::num_measured() const {
    size_t total = 0;
    for (Pauli p : assignment) {
        total += p != Pauli::I;
    }
    return total;
}

GeneratorSet MeasurementPattern::measured_group() const {
    GeneratorSet out(n(), GroupRole::Measured);
    for (size_t q = 0; q < n(); q++) {
        if (assignment[q] != Pauli::I) {
            out.gens.push_back(PauliOp::single(n(), q, assignment[q]));
        }
    }
    return out;
}

std::string MeasurementPattern::str() const {
    std::string out(n(), '.');
    for (size_t q = 0; q < n(); q++) {
        if (assignment[q] != Pauli::I) {
            out[q] = pauli_char(assignment[q]);
        }
    }
    return out;
}

void ProbabilityVector::check() const {
    for (double v : {pX, pY, pZ}) {
        if (!std::isfinite(v) || v < 0) {
            throw ContractViolation("probabilities must be finite and nonnegative");
        }
    }
    if (pm() > 1 + 1e-12) {
        throw ContractViolation("p_X + p_Y + p_Z must not exceed 1");
    }
}

ProbabilityVector ProbabilityVector::on_ray(double pm, double aX, double aY, double aZ) {
    double total = aX + aY + aZ;
    if (!(total > 0)) {
        throw ContractViolation("frequency ray must have positive total");
    }
    return {pm * aX / total, pm * aY / total, pm * aZ / total};
}

MeasurementPattern sample_pattern(size_t n, const ProbabilityVector &p, std::mt19937_64 &rng) {
    p.check();
    MeasurementPattern out(n);
    double cx = p.pX;
    double cy = p.pX + p.pY;
    double cz = p.pm();
    for (size_t q = 0; q < n; q++) {
        double u = uniform01(rng);
        if (u < cx) {
            out[q] = Pauli::X;
        } else if (u < cy) {
            out[q] = Pauli::Y;
        } else if (u < cz) {
            out[q] = Pauli::Z;
        }
    }
    return out;
}

MeasurementPattern sample_pattern(size_t n, const ProbabilityVector &p, uint64_t seed, uint64_t index) {
    auto rng = stream_rng(seed, 0, index);
    return sample_pattern(n, p, rng);
}

const char *bucket_name(Bucket b) {
    switch (b) {
        case Bucket::None:
            return "none";
        case Bucket::X:
            return "X";
        case Bucket::Y:
            return "Y";
        case Bucket::Z:
            return "Z";
    }
    return "?";
}

Monitor::Monitor(CodeSpec code) : code_(std::move(code)) {
    auto report = validate(code_);
    if (!report) {
        throw ContractViolation("Monitor: invalid code (" + report.failure + "): " + report.detail);
    }
    r_ = code_.stabilizers.size();
    rg_ = code_.gauge_gens.size();
    rows_.resize(code_.n);
    for (size_t q = 0; q < code_.n; q++) {
        for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y}) {
            rows_[q][size_t(p)] = make_row(code_.stabilizers.gens, code_, q, p);
        }
    }
    if (code_.is_subsystem()) {
        gauge_rows_.resize(code_.n);
        for (size_t q = 0; q < code_.n; q++) {
            for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y}) {
                gauge_rows_[q][size_t(p)] = make_row(code_.gauge_gens.gens, code_, q, p);
            }
        }
    }
}

Monitor::Reduction Monitor::reduce(const MeasurementPattern &pattern, bool gauge, bool want_combos) const {
    if (pattern.n() != code_.n) {
        throw ContractViolation("pattern length " + std::to_string(pattern.n()) + " differs from code n " +
                                std::to_string(code_.n));
    }
    const auto &table = gauge ? gauge_rows_ : rows_;
    std::vector<const BitVec *> rows;
    for (size_t q = 0; q < code_.n; q++) {
        if (pattern[q] != Pauli::I) {
            rows.push_back(&table[q][size_t(pattern[q])]);
        }
    }
    auto t = kernel_tails(rows, gauge ? rg_ : r_, 2 * code_.k, want_combos);
    return {std::move(t.tails), std::move(t.combos)};
}

Verdict Monitor::verdict(const MeasurementPattern &pattern) const {
    size_t k = code_.k;
    auto red = reduce(pattern, false, false);
    std::vector<PauliOp> classes;
    for (const auto &img : red.images) {
        if (img.any()) {
            classes.push_back(PauliOp::from_symplectic(img));
        }
    }
    Verdict v;
    v.measured_logicals = independent_subset(classes, k, GroupRole::LogicalBasis);
    size_t r = v.measured_logicals.size();
    v.preserved = r == 0;
    if (!code_.is_subsystem()) {
        v.mutual_info = 2 * k - 2 * r;
    } else {
        auto gred = reduce(pattern, true, false);
        size_t lambda = span_rank(gred.images, 2 * k);
        v.mutual_info = 2 * k - r - lambda;
    }
    return v;
}

bool Monitor::preserved(const MeasurementPattern &pattern) const {
    if (code_.k == 1 && !code_.is_subsystem() && code_.n <= kTableMaxQubits) {
        return bucket(pattern) == Bucket::None;
    }
    auto red = reduce(pattern, false, false);
    for (const auto &img : red.images) {
        if (img.any()) {
            return false;
        }
    }
    return true;
}

Bucket Monitor::bucket_direct(const MeasurementPattern &pattern) const {
    auto red = reduce(pattern, false, false);
    uint8_t found = 0;
    for (const auto &img : red.images) {
        uint8_t b = uint8_t(img.get(0)) | uint8_t(img.get(1)) << 1;
        if (b == 0) {
            continue;
        }
        if (found != 0 && found != b) {
            throw std::logic_error("two distinct logical classes measured on a k=1 block: " + pattern.str());
        }
        found = b;
    }
    return Bucket(found);
}

const std::vector<uint8_t> &Monitor::table() const {
    std::call_once(table_once_, [this] {
        size_t n = code_.n;
        size_t total = size_t{1} << (2 * n);
        table_.resize(total);
        MeasurementPattern pat(n);
        for (size_t idx = 0; idx < total; idx++) {
            for (size_t q = 0; q < n; q++) {
                pat[q] = Pauli((idx >> (2 * q)) & 3);
            }
            table_[idx] = uint8_t(bucket_direct(pat));
        }
    });
    return table_;
}

Bucket Monitor::bucket(const MeasurementPattern &pattern) const {
    if (code_.k != 1 || code_.is_subsystem()) {
        throw ContractViolation("bucket: code must be a k = 1 stabilizer code");
    }
    if (pattern.n() != code_.n) {
        throw ContractViolation("bucket: pattern length differs from code n");
    }
    if (code_.n > kTableMaxQubits) {
        return bucket_direct(pattern);
    }
    size_t idx = 0;
    for (size_t q = 0; q < code_.n; q++) {
        idx |= size_t(pattern[q]) << (2 * q);
    }
    return Bucket(table()[idx]);
}

GeneratorSet Monitor::measured_centralizer(const MeasurementPattern &pattern) const {
    auto red = reduce(pattern, false, true);
    auto measured = pattern.measured_set();
    std::vector<PauliOp> ops;
    for (const auto &combo : red.combos) {
        PauliOp op(code_.n);
        for (size_t j : combo) {
            op.set(measured[j], pattern[measured[j]]);
        }
        ops.push_back(std::move(op));
    }
    return GeneratorSet(code_.n, GroupRole::Measured, std::move(ops));
}

bool Monitor::erasure_correctable(std::span<const size_t> subset) const {
    std::vector<const BitVec *> rows;
    for (size_t q : subset) {
        if (q >= code_.n) {
            throw ContractViolation("erasure_correctable: qubit index out of range");
        }
        rows.push_back(&rows_[q][size_t(Pauli::X)]);
        rows.push_back(&rows_[q][size_t(Pauli::Z)]);
    }
    auto t = kernel_tails(rows, r_, 2 * code_.k, false);
    for (const auto &img : t.tails) {
        if (img.any()) {
            return false;
        }
    }
    return true;
}

PauliOp Monitor::logical_image(const PauliOp &op) const {
    size_t k = code_.k;
    PauliOp out(k);
    for (size_t j = 0; j < k; j++) {
        out.x().set(j, symplectic_product(op, code_.logical_z[j]));
        out.z().set(j, symplectic_product(op, code_.logical_x[j]));
    }
    return out;
}

GeneratorSet measured_centralizer_basis(const CodeSpec &code, const MeasurementPattern &pattern) {
    return Monitor(code).measured_centralizer(pattern);
}

Verdict preservation_verdict(const CodeSpec &code, const MeasurementPattern &pattern) {
    return Monitor(code).verdict(pattern);
}

bool erasure_correctable(const CodeSpec &code, std::span<const size_t> subset) {
    return Monitor(code).erasure_correctable(subset);
}

namespace {

// Finds s in <gens> with <s, P_j> = <logical, P_j> for every measured P_j.
std::optional<PauliOp> clean_with(const std::vector<PauliOp> &gens, const PauliOp &logical,
                                  const MeasurementPattern &pattern) {
    auto measured = pattern.measured_set();
    BitMatrix b(measured.size(), gens.size());
    BitVec rhs(measured.size());
    for (size_t j = 0; j < measured.size(); j++) {
        PauliOp p = PauliOp::single(pattern.n(), measured[j], pattern[measured[j]]);
        for (size_t i = 0; i < gens.size(); i++) {
            if (symplectic_product(gens[i], p)) {
                b.set(j, i, true);
            }
        }
        rhs.set(j, symplectic_product(logical, p));
    }
    auto x = solve(b, rhs);
    if (!x) {
        return std::nullopt;
    }
    PauliOp out = logical;
    for (size_t i = 0; i < gens.size(); i++) {
        if (x->get(i)) {
            out *= gens[i];
        }
    }
    return out;
}

}  // namespace

PauliOp Monitor::commuting_representative(const PauliOp &logical, const MeasurementPattern &pattern) const {
    const CodeSpec &code = code_;
    if (logical.num_qubits() != code.n || pattern.n() != code.n) {
        throw ContractViolation("commuting_representative: size mismatch");
    }
    for (const auto &s : code.stabilizers.gens) {
        if (!commutes(s, logical)) {
            throw ContractViolation("commuting_representative: operator is not in the centralizer of S");
        }
    }
    for (const auto &g : code.gauge_gens.gens) {
        if (!commutes(g, logical)) {
            throw ContractViolation("commuting_representative: operator is not a bare logical");
        }
    }
    if (!preserved(pattern)) {
        throw UnsupportedOperation("commuting_representative: the pattern measures a logical operator");
    }
    if (auto out = clean_with(code.stabilizers.gens, logical, pattern)) {
        return *out;
    }
    if (code.is_subsystem()) {
        if (auto out = clean_with(code.gauge_gens.gens, logical, pattern)) {
            return *out;
        }
    }
    throw std::logic_error("commuting_representative: no solution for a preserved pattern");
}

PauliOp commuting_representative(const CodeSpec &code, const PauliOp &logical, const MeasurementPattern &pattern) {
    return Monitor(code).commuting_representative(logical, pattern);
}

}  // namespace qmon
