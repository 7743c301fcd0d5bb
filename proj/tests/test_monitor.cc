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

#include <cmath>

#include "doctest.h"
#include "oracles.h"
#include "qmon/errors.h"
#include "qmon/monitor.h"
#include "qmon/rng.h"

using namespace qmon;

namespace {

PauliOp P(std::string_view s) {
    return PauliOp::from_string(s);
}

MeasurementPattern pattern_from_index(size_t n, size_t idx) {
    MeasurementPattern p(n);
    for (size_t q = 0; q < n; q++) {
        p[q] = Pauli((idx >> (2 * q)) & 3);
    }
    return p;
}

MeasurementPattern random_pattern(std::mt19937_64 &rng, size_t n) {
    double pm = uniform01(rng);
    ProbabilityVector p = ProbabilityVector::on_ray(pm, uniform01(rng) + 1e-9, uniform01(rng), uniform01(rng));
    return sample_pattern(n, p, rng);
}

bool same_span(const GeneratorSet &a, const GeneratorSet &b) {
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

// Searches all 2^|S| stabilizer multiples of `logical` for one commuting
// with every measured single-qubit Pauli.
bool has_commuting_multiple(const CodeSpec &code, const PauliOp &logical, const MeasurementPattern &pattern) {
    auto measured = pattern.measured_group().gens;
    for (auto s : oracle::enumerate_group(code.stabilizers.gens)) {
        PauliOp cand = logical * oracle::unpack(s, code.n);
        bool ok = true;
        for (const auto &m : measured) {
            ok = ok && commutes(cand, m);
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("pattern strings") {
    auto p = MeasurementPattern::from_string(".XZ.Y");
    CHECK(p.n() == 5);
    CHECK(p[1] == Pauli::X);
    CHECK(p[4] == Pauli::Y);
    CHECK(p.str() == ".XZ.Y");
    CHECK(p.measured_set() == std::vector<size_t>{1, 2, 4});
    CHECK_THROWS_AS(MeasurementPattern::from_string("I"), ContractViolation);
}

TEST_CASE("sample_pattern") {
    auto none = sample_pattern(50, {0, 0, 0}, 1, 0);
    CHECK(none.num_measured() == 0);
    auto all_x = sample_pattern(50, {1, 0, 0}, 1, 0);
    CHECK(all_x == MeasurementPattern::uniform(50, Pauli::X));
    CHECK_THROWS_AS(sample_pattern(5, {0.6, 0.6, 0}, 1, 0), ContractViolation);
    CHECK_THROWS_AS(sample_pattern(5, {-0.1, 0, 0}, 1, 0), ContractViolation);
    CHECK(sample_pattern(100, {0.2, 0.3, 0.1}, 9, 4) == sample_pattern(100, {0.2, 0.3, 0.1}, 9, 4));
    CHECK_FALSE(sample_pattern(100, {0.2, 0.3, 0.1}, 9, 4) == sample_pattern(100, {0.2, 0.3, 0.1}, 9, 5));

    const size_t n = 1000000;
    auto big = sample_pattern(n, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 123, 0);
    std::array<size_t, 4> counts{};
    for (Pauli p : big.assignment) {
        counts[size_t(p)]++;
    }
    double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        CHECK(std::abs(double(counts[size_t(p)]) - n / 3.0) < 4 * sigma);
    }
    CHECK(counts[0] == 0);
}

TEST_CASE("measured centralizer examples") {
    auto c = five_qubit();
    CHECK(measured_centralizer_basis(c, MeasurementPattern(5)).empty());
    auto allz = measured_centralizer_basis(c, MeasurementPattern::uniform(5, Pauli::Z));
    REQUIRE(allz.size() == 1);
    CHECK(allz.gens[0] == P("ZZZZZ"));
    CHECK(measured_centralizer_basis(c, MeasurementPattern::from_string("X....")).empty());
}

TEST_CASE("verdict examples") {
    auto c = five_qubit();
    auto v = preservation_verdict(c, MeasurementPattern::uniform(5, Pauli::Z));
    CHECK_FALSE(v.preserved);
    REQUIRE(v.measured_logicals.size() == 1);
    CHECK(v.measured_logicals.gens[0] == P("Z"));
    // The post-measurement Choi state is pure with R fixed: no correlation left.
    CHECK(v.mutual_info == 0);

    for (size_t q = 0; q < 5; q++) {
        for (Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) {
            MeasurementPattern p(5);
            p[q] = b;
            auto vq = preservation_verdict(c, p);
            CHECK(vq.preserved);
            CHECK(vq.mutual_info == 2);
        }
    }
    auto empty = preservation_verdict(c, MeasurementPattern(5));
    CHECK(empty.preserved);
    CHECK(empty.mutual_info == 2);

    auto t3 = toric(3).code;
    auto vy = preservation_verdict(t3, MeasurementPattern::uniform(t3.n, Pauli::Y));
    CHECK_FALSE(vy.preserved);
    GeneratorSet expect(2, GroupRole::LogicalBasis, {P("YI"), P("IY")});
    CHECK(same_span(vy.measured_logicals, expect));
    CHECK(vy.mutual_info == 0);
    CHECK_THROWS_AS(preservation_verdict(c, MeasurementPattern(4)), ContractViolation);
}

TEST_CASE("erasure examples") {
    auto c = five_qubit();
    Monitor mon(c);
    CHECK(mon.erasure_correctable(std::vector<size_t>{}));
    for (size_t a = 0; a < 5; a++) {
        for (size_t b = a + 1; b < 5; b++) {
            CHECK(mon.erasure_correctable(std::vector<size_t>{a, b}));
            for (size_t d = b + 1; d < 5; d++) {
                // Oracle: enumerate every Pauli supported on {a,b,d}.
                bool logical_found = false;
                auto g = oracle::enumerate_group(c.stabilizers.gens);
                for (uint32_t x = 0; x < 8; x++) {
                    for (uint32_t z = 0; z < 8; z++) {
                        oracle::Packed p;
                        size_t sites[3] = {a, b, d};
                        for (int t = 0; t < 3; t++) {
                            p.x |= ((x >> t) & 1) << sites[t];
                            p.z |= ((z >> t) & 1) << sites[t];
                        }
                        bool central = true;
                        for (const auto &s : c.stabilizers.gens) {
                            central = central && !oracle::anticommute(oracle::pack(s), p);
                        }
                        logical_found = logical_found || (central && !g.count(p));
                    }
                }
                CHECK(logical_found);
                CHECK_FALSE(mon.erasure_correctable(std::vector<size_t>{a, b, d}));
            }
        }
    }
    CHECK_THROWS_AS(mon.erasure_correctable(std::vector<size_t>{7}), ContractViolation);
}

TEST_CASE("commuting representative examples") {
    auto c = five_qubit();
    CHECK(commuting_representative(c, c.logical_x[0], MeasurementPattern(5)) == c.logical_x[0]);

    auto pat = MeasurementPattern::from_string("Z....");
    auto rep = commuting_representative(c, c.logical_x[0], pat);
    CHECK((rep.at(0) == Pauli::I || rep.at(0) == Pauli::Z));
    CHECK(group_contains(c.stabilizers, rep * c.logical_x[0]));

    auto t = toric(3).code;
    MeasurementPattern edge(t.n);
    size_t e = toric_h(3, 0, 1);
    CHECK(t.logical_z[0].at(e) == Pauli::Z);
    edge[e] = Pauli::X;
    auto loop = commuting_representative(t, t.logical_z[0], edge);
    CHECK(commutes(loop, PauliOp::single(t.n, e, Pauli::X)));
    CHECK(loop.at(e) != Pauli::Z);
    CHECK(symplectic_product(loop, t.logical_x[0]));
    CHECK_FALSE(symplectic_product(loop, t.logical_x[1]));
    CHECK(group_contains(t.stabilizers, loop * t.logical_z[0]));

    CHECK_THROWS_AS(commuting_representative(c, c.logical_x[0], MeasurementPattern::uniform(5, Pauli::Z)),
                    UnsupportedOperation);
    CHECK_THROWS_AS(commuting_representative(c, P("XIIII"), MeasurementPattern(5)), ContractViolation);
}

TEST_CASE("fast verdict agrees with enumeration") {
    std::mt19937_64 rng(17);
    std::vector<CodeSpec> codes = {five_qubit(), steane(), toric(2).code, bacon_shor(2), bacon_shor(3),
                                   color_triangular(3).code};
    for (const auto &c : codes) {
        Monitor mon(c);
        for (int t = 0; t < 150; t++) {
            auto p = random_pattern(rng, c.n);
            CAPTURE(c.name);
            CAPTURE(p.str());
            CHECK(mon.preserved(p) == oracle::brute_force_preserved(c, p));
            CHECK(mon.verdict(p).preserved == oracle::brute_force_preserved(c, p));
        }
    }
}

TEST_CASE("preservation is equivalent to commuting representatives (exhaustive)") {
    for (const auto &c : {five_qubit(), steane()}) {
        Monitor mon(c);
        std::vector<PauliOp> logicals = {c.logical_x[0], c.logical_z[0], c.logical_x[0] * c.logical_z[0]};
        size_t total = size_t{1} << (2 * c.n);
        for (size_t idx = 0; idx < total; idx++) {
            auto p = pattern_from_index(c.n, idx);
            bool preserved = mon.preserved(p);
            if (preserved) {
                for (const auto &l : logicals) {
                    auto rep = mon.commuting_representative(l, p);
                    for (size_t q : p.measured_set()) {
                        CHECK(commutes(rep, PauliOp::single(c.n, q, p[q])));
                    }
                    CHECK(group_contains(c.stabilizers, rep * l));
                }
            } else {
                bool some_fail = false;
                for (const auto &l : logicals) {
                    some_fail = some_fail || !has_commuting_multiple(c, l, p);
                }
                CHECK(some_fail);
            }
        }
    }
}

TEST_CASE("lookup table matches direct evaluation") {
    auto c = five_qubit();
    Monitor mon(c);
    for (size_t idx = 0; idx < 1024; idx++) {
        auto p = pattern_from_index(5, idx);
        auto v = mon.verdict(p);
        Bucket b = mon.bucket(p);
        CHECK(v.preserved == (b == Bucket::None));
        if (!v.preserved) {
            REQUIRE(v.measured_logicals.size() == 1);
            CHECK(uint8_t(v.measured_logicals.gens[0].at(0)) == uint8_t(b));
        }
    }
}

TEST_CASE("structural properties on random patterns") {
    std::mt19937_64 rng(29);
    std::vector<CodeSpec> codes = {five_qubit(), steane(), reed_muller_15(), toric(3).code, toric(4).code,
                                   bacon_shor(3), bacon_shor(4), color_triangular(5).code};
    for (const auto &c : codes) {
        Monitor mon(c);
        for (int t = 0; t < 100; t++) {
            auto p = random_pattern(rng, c.n);
            auto v = mon.verdict(p);
            CAPTURE(c.name);
            CAPTURE(p.str());
            // Erasure-correctable measured sets never destroy information.
            if (mon.erasure_correctable(p.measured_set())) {
                CHECK(v.preserved);
            }
            // For stabilizer codes M n C(S) maps onto commuting classes. Subsystem
            // codes can measure anticommuting bare classes through their
            // dressed versions.
            if (!c.is_subsystem()) {
                CHECK(v.measured_logicals.is_abelian());
            }
            CHECK(v.preserved == v.measured_logicals.empty());
            CHECK(v.preserved == (v.mutual_info == 2 * c.k));
            if (c.k == 1 && !c.is_subsystem()) {
                CHECK(v.measured_logicals.size() <= 1);
            }
            // Measuring one more qubit never restores information.
            if (!v.preserved) {
                auto more = p;
                for (size_t q = 0; q < c.n; q++) {
                    if (more[q] == Pauli::I) {
                        more[q] = Pauli(1 + rng() % 3);
                        break;
                    }
                }
                CHECK_FALSE(mon.preserved(more));
            }
        }
    }
}
