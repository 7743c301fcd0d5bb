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

#include "qmon/codes.h"

#include <array>
#include <map>

#include "json.hpp"
#include "qmon/errors.h"

namespace qmon {

namespace {

std::vector<PauliOp> parse_all(std::span<const std::string_view> texts) {
    std::vector<PauliOp> out;
    out.reserve(texts.size());
    for (auto t : texts) {
        out.push_back(PauliOp::from_string(t));
    }
    return out;
}

CodeSpec stabilizer_code(std::string name, size_t n, std::vector<PauliOp> stabs, std::vector<PauliOp> lx,
                         std::vector<PauliOp> lz) {
    CodeSpec code;
    code.name = std::move(name);
    code.n = n;
    code.k = lx.size();
    code.g = 0;
    code.stabilizers = GeneratorSet(n, GroupRole::Stabilizer, stabs);
    code.gauge_gens = GeneratorSet(n, GroupRole::Gauge, std::move(stabs));
    code.logical_x = std::move(lx);
    code.logical_z = std::move(lz);
    return code;
}

PauliOp uniform_op(size_t n, Pauli p) {
    PauliOp op(n);
    for (size_t q = 0; q < n; q++) {
        op.set(q, p);
    }
    return op;
}

PauliOp on_sites(size_t n, std::span<const size_t> sites, Pauli p) {
    PauliOp op(n);
    for (size_t q : sites) {
        op.set(q, p);
    }
    return op;
}

// 15-qubit punctured Reed-Muller code. Qubit i carries the 4-bit label i + 1.
// X checks: labels with bit b set (weight 8, one per body cell of the
// tetrahedron). Z checks: labels with bits a and b set, plus labels with bit a
// set and bit a+1 (mod 4) clear (weight 4, one per face).
PauliOp label_op(size_t n, Pauli p, auto &&predicate) {
    PauliOp op(n);
    for (size_t q = 0; q < n; q++) {
        if (predicate(q + 1)) {
            op.set(q, p);
        }
    }
    return op;
}

}  // namespace

CodeSpec five_qubit() {
    constexpr std::array<std::string_view, 4> stabs = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
    return stabilizer_code("five_qubit", 5, parse_all(stabs), {PauliOp::from_string("XXXXX")},
                           {PauliOp::from_string("ZZZZZ")});
}

CodeSpec steane() {
    constexpr std::array<std::string_view, 6> stabs = {"XXXXIII", "IXXIXXI", "IIXXIXX",
                                                       "ZZZZIII", "IZZIZZI", "IIZZIZZ"};
    return stabilizer_code("steane", 7, parse_all(stabs), {PauliOp::from_string("XXXXXXX")},
                           {PauliOp::from_string("ZZZZZZZ")});
}

CodeSpec reed_muller_15() {
    constexpr size_t n = 15;
    std::vector<PauliOp> stabs;
    for (size_t b = 0; b < 4; b++) {
        stabs.push_back(label_op(n, Pauli::X, [&](size_t lab) { return (lab >> b) & 1; }));
    }
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = a + 1; b < 4; b++) {
            stabs.push_back(label_op(n, Pauli::Z, [&](size_t lab) { return ((lab >> a) & 1) && ((lab >> b) & 1); }));
        }
    }
    for (size_t a = 0; a < 4; a++) {
        size_t b = (a + 1) % 4;
        stabs.push_back(label_op(n, Pauli::Z, [&](size_t lab) { return ((lab >> a) & 1) && !((lab >> b) & 1); }));
    }
    return stabilizer_code("reed_muller_15", n, std::move(stabs), {uniform_op(n, Pauli::X)},
                           {uniform_op(n, Pauli::Z)});
}

size_t toric_h(size_t L, size_t r, size_t c) {
    return 2 * ((r % L) * L + (c % L));
}

size_t toric_v(size_t L, size_t r, size_t c) {
    return 2 * ((r % L) * L + (c % L)) + 1;
}

std::vector<PauliOp> toric_stars(size_t L) {
    size_t n = 2 * L * L;
    std::vector<PauliOp> out;
    for (size_t r = 0; r < L; r++) {
        for (size_t c = 0; c < L; c++) {
            std::array<size_t, 4> e = {toric_h(L, r, c), toric_h(L, r, c + L - 1), toric_v(L, r, c),
                                       toric_v(L, r + L - 1, c)};
            out.push_back(on_sites(n, e, Pauli::X));
        }
    }
    return out;
}

std::vector<PauliOp> toric_plaquettes(size_t L) {
    size_t n = 2 * L * L;
    std::vector<PauliOp> out;
    for (size_t r = 0; r < L; r++) {
        for (size_t c = 0; c < L; c++) {
            std::array<size_t, 4> e = {toric_h(L, r, c), toric_h(L, r + 1, c), toric_v(L, r, c),
                                       toric_v(L, r, c + 1)};
            out.push_back(on_sites(n, e, Pauli::Z));
        }
    }
    return out;
}

CodeWithGeometry toric(size_t L) {
    if (L < 2) {
        throw InvalidParameter("toric: L must be at least 2, got " + std::to_string(L));
    }
    size_t n = 2 * L * L;
    auto stars = toric_stars(L);
    auto plaqs = toric_plaquettes(L);
    stars.pop_back();
    plaqs.pop_back();
    std::vector<PauliOp> stabs = std::move(stars);
    stabs.insert(stabs.end(), plaqs.begin(), plaqs.end());

    std::vector<size_t> z1, z2, x1, x2;
    for (size_t t = 0; t < L; t++) {
        z1.push_back(toric_h(L, 0, t));
        z2.push_back(toric_v(L, t, 0));
        x1.push_back(toric_h(L, t, 0));
        x2.push_back(toric_v(L, 0, t));
    }
    CodeWithGeometry out;
    out.code = stabilizer_code("toric", n, std::move(stabs), {on_sites(n, x1, Pauli::X), on_sites(n, x2, Pauli::X)},
                               {on_sites(n, z1, Pauli::Z), on_sites(n, z2, Pauli::Z)});
    out.geometry.kind = LatticeGeometry::Kind::SquareTorus;
    out.geometry.L = L;
    out.geometry.sites.resize(n);
    for (size_t r = 0; r < L; r++) {
        for (size_t c = 0; c < L; c++) {
            out.geometry.sites[toric_h(L, r, c)] = {int(r), int(c), 0};
            out.geometry.sites[toric_v(L, r, c)] = {int(r), int(c), 1};
        }
    }
    return out;
}

CodeWithGeometry color_triangular(size_t d) {
    if (d < 3 || d % 2 == 0) {
        throw InvalidParameter("color_triangular: d must be odd and at least 3, got " + std::to_string(d));
    }
    int R = int(3 * (d - 1) / 2);
    std::map<std::pair<int, int>, size_t> qubit_index;
    std::vector<std::pair<int, int>> faces;
    LatticeGeometry geom;
    geom.kind = LatticeGeometry::Kind::TriangularColor;
    geom.L = d;
    for (int r = 0; r <= R; r++) {
        for (int c = 0; c <= r; c++) {
            if ((r + c) % 3 == 1) {
                faces.emplace_back(r, c);
            } else {
                qubit_index[{r, c}] = geom.sites.size();
                geom.sites.push_back({r, c, 0});
            }
        }
    }
    size_t n = geom.sites.size();
    constexpr std::array<std::pair<int, int>, 6> kNeighbors = {
        std::pair{0, 1}, std::pair{0, -1}, std::pair{1, 0}, std::pair{-1, 0}, std::pair{1, 1}, std::pair{-1, -1}};
    std::vector<PauliOp> xs, zs;
    for (auto [r, c] : faces) {
        std::vector<size_t> support;
        for (auto [dr, dc] : kNeighbors) {
            auto it = qubit_index.find({r + dr, c + dc});
            if (it != qubit_index.end()) {
                support.push_back(it->second);
            }
        }
        xs.push_back(on_sites(n, support, Pauli::X));
        zs.push_back(on_sites(n, support, Pauli::Z));
    }
    std::vector<PauliOp> stabs = std::move(xs);
    stabs.insert(stabs.end(), zs.begin(), zs.end());

    std::vector<size_t> bottom;
    for (int c = 0; c <= R; c++) {
        auto it = qubit_index.find({R, c});
        if (it != qubit_index.end()) {
            bottom.push_back(it->second);
        }
    }
    CodeWithGeometry out;
    out.code = stabilizer_code("color", n, std::move(stabs), {on_sites(n, bottom, Pauli::X)},
                               {on_sites(n, bottom, Pauli::Z)});
    out.geometry = std::move(geom);
    return out;
}

CodeSpec bacon_shor(size_t L) {
    if (L < 2) {
        throw InvalidParameter("bacon_shor: L must be at least 2, got " + std::to_string(L));
    }
    size_t n = L * L;
    auto q = [L](size_t i, size_t j) { return j * L + i; };
    std::vector<PauliOp> gauge;
    for (size_t j = 0; j < L; j++) {
        for (size_t i = 0; i + 1 < L; i++) {
            std::array<size_t, 2> s = {q(i, j), q(i + 1, j)};
            gauge.push_back(on_sites(n, s, Pauli::X));
        }
    }
    for (size_t i = 0; i < L; i++) {
        for (size_t j = 0; j + 1 < L; j++) {
            std::array<size_t, 2> s = {q(i, j), q(i, j + 1)};
            gauge.push_back(on_sites(n, s, Pauli::Z));
        }
    }
    std::vector<PauliOp> stabs;
    for (size_t i = 0; i + 1 < L; i++) {
        std::vector<size_t> s;
        for (size_t j = 0; j < L; j++) {
            s.push_back(q(i, j));
            s.push_back(q(i + 1, j));
        }
        stabs.push_back(on_sites(n, s, Pauli::X));
    }
    for (size_t j = 0; j + 1 < L; j++) {
        std::vector<size_t> s;
        for (size_t i = 0; i < L; i++) {
            s.push_back(q(i, j));
            s.push_back(q(i, j + 1));
        }
        stabs.push_back(on_sites(n, s, Pauli::Z));
    }
    std::vector<size_t> column, row;
    for (size_t t = 0; t < L; t++) {
        column.push_back(q(0, t));
        row.push_back(q(t, 0));
    }
    CodeSpec code;
    code.name = "bacon_shor";
    code.n = n;
    code.k = 1;
    code.g = (L - 1) * (L - 1);
    code.stabilizers = GeneratorSet(n, GroupRole::Stabilizer, std::move(stabs));
    code.gauge_gens = GeneratorSet(n, GroupRole::Gauge, std::move(gauge));
    code.logical_x = {on_sites(n, column, Pauli::X)};
    code.logical_z = {on_sites(n, row, Pauli::Z)};
    return code;
}

CodeSpec concatenate(const CodeSpec &outer, const CodeSpec &inner) {
    if (inner.k != 1 || inner.is_subsystem() || outer.is_subsystem()) {
        throw UnsupportedOperation("concatenate: inner code must be a k=1 stabilizer code");
    }
    size_t m = inner.n;
    size_t n = outer.n * m;
    auto lift = [&](const PauliOp &p) {
        PauliOp out(n);
        for (size_t b = 0; b < outer.n; b++) {
            Pauli letter = p.at(b);
            PauliOp block(m);
            if (letter == Pauli::X || letter == Pauli::Y) {
                block *= inner.logical_x[0];
            }
            if (letter == Pauli::Z || letter == Pauli::Y) {
                block *= inner.logical_z[0];
            }
            for (size_t t = 0; t < m; t++) {
                out.set(b * m + t, block.at(t));
            }
        }
        return out;
    };
    std::vector<PauliOp> stabs;
    for (size_t b = 0; b < outer.n; b++) {
        for (const auto &s : inner.stabilizers.gens) {
            PauliOp out(n);
            for (size_t t = 0; t < m; t++) {
                out.set(b * m + t, s.at(t));
            }
            stabs.push_back(std::move(out));
        }
    }
    for (const auto &s : outer.stabilizers.gens) {
        stabs.push_back(lift(s));
    }
    std::vector<PauliOp> lx, lz;
    for (size_t j = 0; j < outer.k; j++) {
        lx.push_back(lift(outer.logical_x[j]));
        lz.push_back(lift(outer.logical_z[j]));
    }
    return stabilizer_code(outer.name + "*" + inner.name, n, std::move(stabs), std::move(lx), std::move(lz));
}

CodeSpec make_code(std::string_view name, size_t size) {
    if (name == "five_qubit") {
        return five_qubit();
    }
    if (name == "steane") {
        return steane();
    }
    if (name == "reed_muller_15") {
        return reed_muller_15();
    }
    if (name == "toric") {
        return toric(size).code;
    }
    if (name == "color") {
        return color_triangular(size).code;
    }
    if (name == "bacon_shor") {
        return bacon_shor(size);
    }
    if (name == "five_qubit_concat2") {
        return concatenate(five_qubit(), five_qubit());
    }
    throw InvalidParameter("unknown code name '" + std::string(name) + "'");
}

ValidationReport validate(const CodeSpec &code) {
    auto fail = [](std::string what, std::string detail) {
        return ValidationReport{false, std::move(what), std::move(detail)};
    };
    const size_t n = code.n;
    auto all_n = [n](std::span<const PauliOp> ops) {
        for (const auto &p : ops) {
            if (p.num_qubits() != n) {
                return false;
            }
        }
        return true;
    };
    if (code.stabilizers.num_qubits != n || code.gauge_gens.num_qubits != n || !all_n(code.stabilizers.gens) ||
        !all_n(code.gauge_gens.gens) || !all_n(code.logical_x) || !all_n(code.logical_z)) {
        return fail("size", "operator length differs from n");
    }
    if (code.k + code.g > n || code.stabilizers.size() != n - code.k - code.g) {
        return fail("stabilizer-count", "expected n-k-g = " + std::to_string(n - code.k - code.g) + " generators, got " +
                                            std::to_string(code.stabilizers.size()));
    }
    if (!code.stabilizers.is_independent()) {
        return fail("independence", "stabilizer generators are dependent");
    }
    const auto &s = code.stabilizers.gens;
    for (size_t i = 0; i < s.size(); i++) {
        for (size_t j = i + 1; j < s.size(); j++) {
            if (!commutes(s[i], s[j])) {
                return fail("commutation", "stabilizers " + s[i].str() + " and " + s[j].str() + " anticommute");
            }
        }
    }
    if (code.logical_x.size() != code.k || code.logical_z.size() != code.k) {
        return fail("logical-count", "expected k logical pairs");
    }
    for (size_t j = 0; j < code.k; j++) {
        for (const auto &st : s) {
            if (!commutes(st, code.logical_x[j]) || !commutes(st, code.logical_z[j])) {
                return fail("logical-centralizer", "logical pair " + std::to_string(j) +
                                                       " anticommutes with stabilizer " + st.str());
            }
        }
    }
    for (size_t i = 0; i < code.k; i++) {
        for (size_t j = 0; j < code.k; j++) {
            bool want = i == j;
            if (symplectic_product(code.logical_x[i], code.logical_z[j]) != want) {
                return fail("logical-pairing", "pairing of X" + std::to_string(i) + " and Z" + std::to_string(j));
            }
            if (i != j && (symplectic_product(code.logical_x[i], code.logical_x[j]) ||
                           symplectic_product(code.logical_z[i], code.logical_z[j]))) {
                return fail("logical-pairing", "logicals of different pairs anticommute");
            }
        }
    }
    if (!code.gauge_gens.is_independent()) {
        return fail("gauge-independence", "gauge generators are dependent");
    }
    {
        // One rank computation: S lies in G iff appending S keeps the rank.
        GeneratorSet both = code.gauge_gens;
        both.gens.insert(both.gens.end(), s.begin(), s.end());
        if (group_rank(both.gens, n) != code.gauge_gens.size()) {
            for (const auto &st : s) {
                if (!group_contains(code.gauge_gens, st)) {
                    return fail("gauge-contains-stabilizers", "stabilizer " + st.str() + " is not in G");
                }
            }
        }
    }
    if (code.gauge_gens.size() != n - code.k + code.g) {
        return fail("gauge-count", "expected n-k+g gauge generators");
    }
    for (const auto &gg : code.gauge_gens.gens) {
        for (const auto &st : s) {
            if (!commutes(gg, st)) {
                return fail("gauge-stabilizer-commutation", "gauge generator " + gg.str() + " anticommutes with S");
            }
        }
        for (size_t j = 0; j < code.k; j++) {
            if (!commutes(gg, code.logical_x[j]) || !commutes(gg, code.logical_z[j])) {
                return fail("bare-logical", "logical pair " + std::to_string(j) +
                                                " anticommutes with gauge generator " + gg.str());
            }
        }
    }
    return {};
}

std::string code_to_json(const CodeSpec &code) {
    nlohmann::ordered_json j;
    j["name"] = code.name;
    j["n"] = code.n;
    j["k"] = code.k;
    j["g"] = code.g;
    j["stabilizers"] = code.stabilizers.strs();
    j["gauge"] = code.gauge_gens.strs();
    std::vector<std::string> lx, lz;
    for (const auto &p : code.logical_x) {
        lx.push_back(p.str());
    }
    for (const auto &p : code.logical_z) {
        lz.push_back(p.str());
    }
    j["logical_x"] = lx;
    j["logical_z"] = lz;
    return j.dump(2);
}

CodeSpec code_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ContractViolation(std::string("code_from_json: ") + e.what());
    }
    auto ops = [&](const char *key) {
        std::vector<PauliOp> out;
        if (!j.contains(key)) {
            return out;
        }
        for (const auto &s : j.at(key)) {
            out.push_back(PauliOp::from_string(s.get<std::string>()));
        }
        return out;
    };
    try {
        CodeSpec code;
        code.name = j.value("name", std::string("custom"));
        code.n = j.at("n").get<size_t>();
        code.k = j.at("k").get<size_t>();
        code.g = j.value("g", size_t{0});
        auto stabs = ops("stabilizers");
        auto gauge = ops("gauge");
        if (gauge.empty() && code.g == 0) {
            gauge = stabs;
        }
        code.stabilizers = GeneratorSet(code.n, GroupRole::Stabilizer, std::move(stabs));
        code.gauge_gens = GeneratorSet(code.n, GroupRole::Gauge, std::move(gauge));
        code.logical_x = ops("logical_x");
        code.logical_z = ops("logical_z");
        return code;
    } catch (const nlohmann::json::exception &e) {
        throw ContractViolation(std::string("code_from_json: ") + e.what());
    }
}

}  // namespace qmon
