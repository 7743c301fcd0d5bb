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

#include "qmon/toric_y.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "qmon/errors.h"
#include "qmon/gf2.h"

namespace qmon {

namespace {

void require_L(size_t L) {
    if (L < 2) {
        throw ContractViolation("toric Y analysis needs L >= 2, got " + std::to_string(L));
    }
}

// Row r and column c of the vertex owning `edge`, and whether it is vertical.
void edge_coords(size_t L, size_t edge, size_t &r, size_t &c, bool &vertical) {
    vertical = edge % 2 == 1;
    size_t v = edge / 2;
    r = v / L;
    c = v % L;
}

// Binomial coefficients as long double, row L.
std::vector<long double> binomials(size_t L) {
    std::vector<long double> row(L + 1, 1);
    for (size_t i = 1; i <= L; i++) {
        row[i] = row[i - 1] * (L - i + 1) / i;
    }
    return row;
}

}  // namespace

size_t toric_line_a(size_t L, size_t edge) {
    size_t r, c;
    bool vertical;
    edge_coords(L, edge, r, c, vertical);
    return (c + 2 * L - r - (vertical ? 1 : 0)) % L;
}

size_t toric_line_b(size_t L, size_t edge) {
    size_t r, c;
    bool vertical;
    edge_coords(L, edge, r, c, vertical);
    return (c + r) % L;
}

PauliOp y_line_product(size_t L, const std::vector<size_t> &a_lines, const std::vector<size_t> &b_lines) {
    require_L(L);
    std::vector<bool> in_a(L), in_b(L);
    for (size_t a : a_lines) {
        if (a >= L) {
            throw ContractViolation("y_line_product: line index out of range");
        }
        in_a[a] = !in_a[a];
    }
    for (size_t b : b_lines) {
        if (b >= L) {
            throw ContractViolation("y_line_product: line index out of range");
        }
        in_b[b] = !in_b[b];
    }
    size_t n = 2 * L * L;
    PauliOp out(n);
    for (size_t e = 0; e < n; e++) {
        if (in_a[toric_line_a(L, e)] != in_b[toric_line_b(L, e)]) {
            out.set(e, Pauli::Y);
        }
    }
    return out;
}

namespace {

BitVec support_bits(const PauliOp &p) {
    BitVec v(p.num_qubits());
    for (size_t q : p.support()) {
        v.set(q, true);
    }
    return v;
}

BitMatrix check_supports(size_t L) {
    BitMatrix checks(0, 2 * L * L);
    for (const auto &s : toric_stars(L)) {
        checks.push_row(support_bits(s));
    }
    for (const auto &s : toric_plaquettes(L)) {
        checks.push_row(support_bits(s));
    }
    return checks;
}

// A Y-commutant element outside the span of the lines, taken from a nullspace
// basis of the check-support matrix.
PauliOp y_commutant_extra(size_t L, const std::vector<PauliOp> &lines) {
    size_t n = 2 * L * L;
    BitMatrix span(0, n);
    for (const auto &line : lines) {
        span.push_row(support_bits(line));
    }
    for (const auto &v : nullspace_basis(check_supports(L))) {
        if (in_rowspace(span, v)) {
            continue;
        }
        PauliOp out(n);
        std::vector<size_t> per_cell(L * L);
        for (size_t q = 0; q < n; q++) {
            if (v.get(q)) {
                out.set(q, Pauli::Y);
                per_cell[toric_line_a(L, q) * L + toric_line_b(L, q)]++;
            }
        }
        for (size_t c : per_cell) {
            if (c != 1) {
                throw std::logic_error("y_commutant_basis: extra element is not one edge per cell");
            }
        }
        return out;
    }
    throw std::logic_error("y_commutant_basis: lines span the whole Y-commutant");
}

}  // namespace

size_t y_commutant_dimension(size_t L) {
    require_L(L);
    return nullspace_basis(check_supports(L)).size();
}

size_t y_line_rank(size_t L) {
    require_L(L);
    BitMatrix m(0, 2 * L * L);
    for (size_t a = 0; a < L; a++) {
        m.push_row(support_bits(y_line_product(L, {a}, {})));
    }
    for (size_t b = 0; b < L; b++) {
        m.push_row(support_bits(y_line_product(L, {}, {b})));
    }
    return rank(m);
}

YCommutantBasis y_commutant_basis(size_t L) {
    require_L(L);
    YCommutantBasis out;
    out.L = L;
    for (size_t a = 0; a < L; a++) {
        out.lines.push_back(y_line_product(L, {a}, {}));
    }
    for (size_t b = 0; b < L; b++) {
        out.lines.push_back(y_line_product(L, {}, {b}));
    }
    auto stars = toric_stars(L);
    auto plaqs = toric_plaquettes(L);
    for (const auto &line : out.lines) {
        for (const auto &s : stars) {
            if (!commutes(line, s)) {
                throw std::logic_error("y_commutant_basis: line anticommutes with a star");
            }
        }
        for (const auto &p : plaqs) {
            if (!commutes(line, p)) {
                throw std::logic_error("y_commutant_basis: line anticommutes with a plaquette");
            }
        }
    }
    out.generators = independent_subset(out.lines, 2 * L * L, GroupRole::Generic);
    out.extra = y_commutant_extra(L, out.lines);
    return out;
}

size_t y_weight(size_t L, size_t a, size_t b) {
    if (a > L || b > L) {
        throw ContractViolation("y_weight: a and b must lie in [0, L]");
    }
    return (L - a) * b + (L - b) * a;
}

double y_destroy_upper_bound(size_t L, double pY, YBoundTerms terms) {
    require_L(L);
    if (!(pY >= 0 && pY <= 1)) {
        throw ContractViolation("y_destroy_upper_bound: pY must lie in [0, 1]");
    }
    long double p = pY;
    auto term = [&](size_t a, size_t b) { return std::pow(p, (long double)(2 * y_weight(L, a, b))); };

    if (terms == YBoundTerms::AllClasses) {
        auto binom = binomials(L);
        long double sum = 0;
        for (size_t a = 0; a <= L; a++) {
            for (size_t b = 0; b <= L; b++) {
                if ((a == 0 && b == 0) || (a == L && b == L)) {
                    continue;
                }
                sum += binom[a] * binom[b] * term(a, b);
            }
        }
        return double(sum);
    }

    // Exact union over distinct non-stabilizer elements. The Y-commutant is
    // the line span plus the coset E * (line span), where E holds one edge of
    // every cell, so every element of that coset has weight L^2. Line subsets
    // are counted by size and logical image; each element arises from two
    // choices (A, B) and (A^c, B^c), hence the final 1/2.
    Monitor mon(toric(L).code);
    auto basis = y_commutant_basis(L);
    auto image_key = [&](const PauliOp &op) {
        PauliOp img = mon.logical_image(op);
        uint32_t key = 0;
        for (size_t q = 0; q < 2; q++) {
            key |= uint32_t(img.x().get(q)) << q;
            key |= uint32_t(img.z().get(q)) << (2 + q);
        }
        return key;
    };
    auto count_subsets = [&](size_t offset) {
        std::vector<std::array<long double, 16>> dp(L + 1);
        dp[0][0] = 1;
        for (size_t line = 0; line < L; line++) {
            uint32_t key = image_key(basis.lines[offset + line]);
            for (size_t s = line + 1; s-- > 0;) {
                for (uint32_t k = 0; k < 16; k++) {
                    dp[s + 1][k ^ key] += dp[s][k];
                }
            }
        }
        return dp;
    };
    auto da = count_subsets(0);
    auto db = count_subsets(L);
    uint32_t extra_key = image_key(basis.extra);
    long double extra_term = std::pow(p, (long double)(L * L));
    long double sum = 0;
    for (size_t a = 0; a <= L; a++) {
        for (size_t b = 0; b <= L; b++) {
            long double t = term(a, b);
            for (uint32_t ka = 0; ka < 16; ka++) {
                for (uint32_t kb = 0; kb < 16; kb++) {
                    long double c = da[a][ka] * db[b][kb];
                    if (c == 0) {
                        continue;
                    }
                    if ((ka ^ kb) != 0) {
                        sum += c * t;
                    }
                    if ((ka ^ kb ^ extra_key) != 0) {
                        sum += c * extra_term;
                    }
                }
            }
        }
    }
    return double(sum / 2);
}

std::string logical_set_label(const GeneratorSet &measured_logicals) {
    const auto &gens = measured_logicals.gens;
    if (gens.empty()) {
        return "none";
    }
    size_t k = measured_logicals.num_qubits;
    std::vector<PauliOp> elems;
    for (uint64_t mask = 1; mask < (uint64_t{1} << gens.size()); mask++) {
        PauliOp e(k);
        for (size_t i = 0; i < gens.size(); i++) {
            if (mask >> i & 1) {
                e *= gens[i];
            }
        }
        elems.push_back(e);
    }
    auto key = [k](const PauliOp &p) {
        std::vector<int> letters;
        for (size_t q = 0; q < k; q++) {
            letters.push_back(p.at(q) == Pauli::I ? 4 : int(p.at(q)));
        }
        return std::make_pair(p.weight(), letters);
    };
    std::sort(elems.begin(), elems.end(), [&](const PauliOp &x, const PauliOp &y) { return key(x) < key(y); });
    auto chosen = independent_subset(elems, k, GroupRole::Generic).gens;
    std::string out;
    for (const auto &e : chosen) {
        if (!out.empty()) {
            out += ",";
        }
        for (size_t q = 0; q < k; q++) {
            if (e.at(q) != Pauli::I) {
                out += pauli_char(e.at(q));
                out += std::to_string(q + 1);
            }
        }
    }
    return out;
}

YClassification y_classify_measured(const Monitor &toric_monitor, const MeasurementPattern &pattern) {
    for (size_t q = 0; q < pattern.n(); q++) {
        if (pattern[q] != Pauli::I && pattern[q] != Pauli::Y) {
            throw ContractViolation("y_classify_measured: pattern must measure only Y");
        }
    }
    Verdict v = toric_monitor.verdict(pattern);
    YClassification out;
    out.preserved = v.preserved;
    out.measured_logicals = v.measured_logicals;
    out.label = logical_set_label(v.measured_logicals);
    return out;
}

YClassification y_classify_measured(size_t L, const MeasurementPattern &pattern) {
    return y_classify_measured(Monitor(toric(L).code), pattern);
}

}  // namespace qmon
