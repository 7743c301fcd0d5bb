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

// Acceptance report: one PASS/FAIL line per criterion.
//
// Usage: qmon_acceptance [--expect-fail=N,M,...]
// Exit status is nonzero if a criterion outside the expected-fail list fails
// or a listed criterion passes (so the list cannot go stale silently).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.h"
#include "qmon/choi.h"
#include "qmon/concat.h"
#include "qmon/experiment.h"
#include "qmon/haar.h"
#include "qmon/rng.h"
#include "qmon/toric_y.h"

using namespace qmon;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

OutcomeDistribution on_ray(double pm, double aX, double aY, double aZ) {
    return {1 - pm, pm * aX, pm * aY, pm * aZ};
}

// 1. Five-qubit level map against (10p^3 - p^5)/9.
Outcome five_qubit_closed_form() {
    Monitor mon(five_qubit());
    double worst = 0;
    for (int i = 0; i <= 10; i++) {
        double p = i / 10.0;
        auto d = level_map_exhaustive(mon, on_ray(p, 1.0 / 3, 1.0 / 3, 1.0 / 3));
        worst = std::max(worst, std::abs(d.pm() - (10 * std::pow(p, 3) - std::pow(p, 5)) / 9));
    }
    return {worst <= 1e-10, "max abs error " + fmt("%.3g", worst)};
}

// 2. Five-qubit: 15 rays at p_m = 0.95, 8 exhaustive rounds.
Outcome five_qubit_universality() {
    Monitor mon(five_qubit());
    GridSpec g;
    g.resolution = 4;
    g.pm = 1.0;
    auto rays = g.expand();
    double worst = 1;
    for (const auto &a : rays) {
        auto t = flow(mon, on_ray(0.95, a.pX, a.pY, a.pZ), 8, FlowMethod::Exhaustive);
        worst = std::min(worst, t.rounds.back().p_none);
    }
    return {rays.size() == 15 && worst >= 0.99,
            std::to_string(rays.size()) + " rays, min final preservation " + fmt("%.6f", worst)};
}

// 3. Five-qubit at p_m = 1, uniform: one third per class.
Outcome five_qubit_uniform_classes() {
    CodeSpec code = five_qubit();
    Monitor mon(code);
    auto d = level_map_exhaustive(mon, on_ray(1, 1.0 / 3, 1.0 / 3, 1.0 / 3));
    // Direct enumeration over the 3^5 fully measured patterns.
    std::array<double, 4> enumerated{};
    for (size_t idx = 0; idx < 243; idx++) {
        MeasurementPattern pat(5);
        size_t v = idx;
        for (size_t q = 0; q < 5; q++) {
            pat[q] = Pauli(1 + v % 3);
            v /= 3;
        }
        int b = oracle::brute_force_bucket(code, pat);
        enumerated[size_t(std::max(b, 0))] += 1.0 / 243;
    }
    double err = std::max({std::abs(d.pX - 1.0 / 3), std::abs(d.pY - 1.0 / 3), std::abs(d.pZ - 1.0 / 3),
                           std::abs(enumerated[1] - 1.0 / 3), std::abs(enumerated[2] - 1.0 / 3),
                           std::abs(enumerated[3] - 1.0 / 3), std::abs(d.p_none), enumerated[0]});
    // Symmetry: relabelling the input frequencies relabels the output.
    auto skew = level_map_exhaustive(mon, on_ray(1, 0.5, 0.3, 0.2));
    auto swapped = level_map_exhaustive(mon, on_ray(1, 0.3, 0.5, 0.2));
    double sym = std::max(std::abs(skew.pX - swapped.pY), std::abs(skew.pY - swapped.pX));
    return {err <= 1e-10 && sym <= 1e-12,
            "(" + fmt("%.12f", d.pX) + ", " + fmt("%.12f", d.pY) + ", " + fmt("%.12f", d.pZ) + "), max error " +
                fmt("%.3g", err)};
}

// 4. Steane phase diagram at p_m = 0.95 after 7 rounds of 10^3 samples.
Outcome steane_phase_diagram() {
    Monitor mon(steane());
    double worst_in = 1, worst_out = 0, exact_in = 1;
    std::string where_in, where_out;
    size_t inside = 0, outside = 0;
    for (size_t i = 0; i <= 19; i++) {
        for (size_t j = 0; i + j <= 19; j++) {
            size_t l = 19 - i - j;
            double p[3] = {0.05 * i, 0.05 * j, 0.05 * l};
            double mx = std::max({p[0], p[1], p[2]});
            bool in = mx <= 0.45 + 1e-9;
            bool out = mx >= 0.55 - 1e-9;
            if (!in && !out) {
                continue;
            }
            OutcomeDistribution d0{0.05, p[0], p[1], p[2]};
            auto t = flow(mon, d0, 7, FlowMethod::MonteCarlo, 1000, 4, i * 32 + j);
            double f = t.rounds.back().p_none;
            std::string where = "(" + fmt("%.2f", p[0]) + "," + fmt("%.2f", p[1]) + "," + fmt("%.2f", p[2]) + ")";
            if (in) {
                inside++;
                if (f < worst_in) {
                    worst_in = f;
                    where_in = where;
                    exact_in = flow(mon, d0, 7, FlowMethod::Exhaustive).rounds.back().p_none;
                }
            } else {
                outside++;
                if (f > worst_out) {
                    worst_out = f;
                    where_out = where;
                }
            }
        }
    }
    return {worst_in >= 0.9 && worst_out <= 0.1,
            std::to_string(inside) + " inner points min " + fmt("%.3f", worst_in) + " at " + where_in + " (exact map " +
                fmt("%.5f", exact_in) + "), " +
                std::to_string(outside) + " outer points max " + fmt("%.3f", worst_out) +
                (where_out.empty() ? "" : " at " + where_out)};
}

// 5. 15-qubit threshold on the uniform ray, 3 rounds.
Outcome reed_muller_threshold() {
    auto cfg = parse_config(R"({"experiment": "threshold", "code": "reed_muller_15", "rounds": 3,
        "samples": 1000, "seed": 5, "threshold": {"mode": "concat", "tolerance": 0.01}})");
    auto t = run_threshold(cfg);
    double est = std::get<double>(t.rows[0][9]);
    return {est >= 0.5 && est <= 0.7, "estimate " + fmt("%.4f", est)};
}

double preserved_fraction(const Monitor &mon, const ProbabilityVector &p, size_t samples, uint64_t stream) {
    return sample_point(mon, 0, p, samples, 6, stream, false, 0).preserved;
}

// 6. Toric L = 21 at three points, 100 samples.
Outcome toric_preservation() {
    Monitor mon(toric(21).code);
    double a = preserved_fraction(mon, {0.3, 0.3, 0.35}, 100, 1);
    double b = preserved_fraction(mon, {0.6, 0, 0.35}, 100, 2);
    double c = preserved_fraction(mon, {0, 0.95, 0}, 100, 3);
    return {a >= 0.95 && b <= 0.05 && c >= 0.95, "preserved " + fmt("%.2f", a) + " at (0.3,0.3,0.35), " +
                                                    fmt("%.2f", b) + " at (0.6,0,0.35), " + fmt("%.2f", c) +
                                                    " at (0,0.95,0)"};
}

// 7. Toric X-only threshold at L = 21.
Outcome toric_percolation() {
    auto cfg = parse_config(R"({"experiment": "threshold", "code": "toric", "size": 21, "samples": 200,
        "seed": 7, "threshold": {"rays": [[1, 0, 0]], "tolerance": 0.01}})");
    auto t = run_threshold(cfg);
    double est = std::get<double>(t.rows[0][9]);
    return {std::abs(est - 0.5) <= 0.05, "estimate " + fmt("%.4f", est)};
}

// 8. All-Y commutant dimension and line operators.
Outcome y_commutant_structure() {
    bool ok = true;
    std::string detail;
    for (size_t L : {3, 5, 8}) {
        size_t dim = y_commutant_dimension(L);
        size_t lines = y_line_rank(L);
        // The lines must lie in the commutant: each commutes with every check.
        auto basis = y_commutant_basis(L);
        auto code = toric(L).code;
        bool inside = true;
        for (const auto &line : basis.lines) {
            for (const auto &s : code.stabilizers.gens) {
                inside = inside && commutes(line, s);
            }
        }
        ok = ok && dim == 2 * L - 1 && lines == 2 * L - 1 && inside;
        detail += "L=" + std::to_string(L) + ": dim " + std::to_string(dim) + ", lines " + std::to_string(lines) +
                  (inside ? "" : " (line outside commutant)") + "; ";
    }
    return {ok, detail + "expected dim " + "2L-1"};
}

// 9. All-Y measured classes for L = 3, 4.
Outcome all_y_classes() {
    auto l3 = y_classify_measured(3, MeasurementPattern::uniform(18, Pauli::Y)).label;
    auto l4 = y_classify_measured(4, MeasurementPattern::uniform(32, Pauli::Y)).label;
    auto l3b = y_classify_measured(3, MeasurementPattern::uniform(18, Pauli::Y)).label;
    auto l4b = y_classify_measured(4, MeasurementPattern::uniform(32, Pauli::Y)).label;
    bool ok = l3 == "Y1,Y2" && l4 == "X1X2,Z1Z2" && l3 == l3b && l4 == l4b;
    return {ok, "L=3 {" + l3 + "}, L=4 {" + l4 + "}"};
}

// 10. Color code d = 21 at p_m = 0.95.
Outcome color_code() {
    Monitor mon(color_triangular(21).code);
    const ProbabilityVector interior[] = {{0.3, 0.3, 0.35}, {0.35, 0.3, 0.3}, {0.3, 0.35, 0.3}};
    const ProbabilityVector exterior[] = {{0.6, 0.2, 0.15}, {0.15, 0.6, 0.2}, {0.2, 0.15, 0.6}};
    double min_in = 1, max_out = 0;
    uint64_t stream = 100;
    for (const auto &p : interior) {
        min_in = std::min(min_in, preserved_fraction(mon, p, 100, stream++));
    }
    for (const auto &p : exterior) {
        max_out = std::max(max_out, preserved_fraction(mon, p, 100, stream++));
    }
    return {min_in >= 0.9 && max_out <= 0.1,
            "interior min preserved " + fmt("%.2f", min_in) + ", exterior max preserved " + fmt("%.2f", max_out)};
}

// 11. Bacon-Shor L = 20 at low rates.
Outcome bacon_shor_fragile() {
    Monitor mon(bacon_shor(20));
    auto a = sample_point(mon, 20, {0.1, 0, 0.1}, 100, 11, 1, false, 0);
    auto b = sample_point(mon, 20, {0, 0.1, 0}, 100, 11, 2, false, 0);
    size_t da = size_t(std::lround((1 - a.preserved) * 100));
    size_t db = size_t(std::lround((1 - b.preserved) * 100));
    return {da >= 99 && db >= 99, "destroyed " + std::to_string(da) + "/100 at (0.1,0,0.1), " +
                                      std::to_string(db) + "/100 at (0,0.1,0)"};
}

std::vector<CodeSpec> small_library() {
    return {five_qubit(), steane(),        reed_muller_15(), toric(2).code,          toric(3).code,
            bacon_shor(2), bacon_shor(3), bacon_shor(4),    color_triangular(3).code, color_triangular(5).code};
}

// 12. Erasure-correctable measured sets are always preserved.
Outcome erasure_implies_preserved() {
    auto codes = small_library();
    std::deque<Monitor> monitors;
    for (const auto &c : codes) {
        monitors.emplace_back(c);
    }
    size_t violations = 0, correctable = 0;
    for (size_t i = 0; i < 10000; i++) {
        auto rng = stream_rng(12, 0, i);
        const Monitor &mon = monitors[rng() % monitors.size()];
        double pm = uniform01(rng);
        double a = uniform01(rng), b = uniform01(rng);
        ProbabilityVector p{pm * std::min(a, b), pm * (std::max(a, b) - std::min(a, b)), pm * (1 - std::max(a, b))};
        auto pat = sample_pattern(mon.code().n, p, rng);
        auto set = pat.measured_set();
        if (mon.erasure_correctable(set)) {
            correctable++;
            violations += mon.preserved(pat) ? 0 : 1;
        }
    }
    return {violations == 0, std::to_string(violations) + " violations among " + std::to_string(correctable) +
                                 " erasure-correctable instances of 10000"};
}

// 13. Fast verdict against the Choi route; single-shot against sequential update.
Outcome oracle_equivalence() {
    std::vector<CodeSpec> codes = {five_qubit(), steane(),      toric(2).code, toric(3).code,
                                   toric(4).code, bacon_shor(2), bacon_shor(3), bacon_shor(4)};
    std::deque<Monitor> monitors;
    std::vector<StabilizerState> chois;
    for (const auto &c : codes) {
        monitors.emplace_back(c);
        chois.push_back(c.is_subsystem() ? build_choi_subsystem(c) : build_choi(c));
    }
    size_t verdict_mismatch = 0, group_mismatch = 0;
    for (size_t i = 0; i < 1000; i++) {
        auto rng = stream_rng(13, 0, i);
        size_t c = rng() % codes.size();
        double pm = uniform01(rng);
        auto pat = sample_pattern(codes[c].n, {pm / 3, pm / 3, pm / 3}, rng);
        if (monitors[c].preserved(pat) != choi_preserved(codes[c], pat)) {
            verdict_mismatch++;
        }
        // Measured Paulis on the Choi qubits (system qubits come first).
        GeneratorSet measured(chois[c].n_total, GroupRole::Measured);
        for (size_t q : pat.measured_set()) {
            measured.gens.push_back(PauliOp::single(chois[c].n_total, q, pat[q]));
        }
        auto once = apply_measurements(chois[c], measured);
        auto seq = apply_measurements_sequential(chois[c], measured);
        if (!same_group(once.group, seq.group)) {
            group_mismatch++;
        }
    }
    return {verdict_mismatch == 0 && group_mismatch == 0, std::to_string(verdict_mismatch) +
                                                              " verdict mismatches, " + std::to_string(group_mismatch) +
                                                              " group mismatches in 1000 instances"};
}

// 14. Haar-random code purity and 2-norm distance.
Outcome haar_purity() {
    auto s6 = haar_code_purity(1, 10, 6, 200, 14);
    double predicted = predicted_purity_exact(64, 16, 2);
    double se = s6.std / std::sqrt(double(s6.samples));
    bool purity_ok = std::abs(s6.mean - predicted) <= 3 * se;
    std::string detail = "m=6 mean " + fmt("%.5f", s6.mean) + " vs " + fmt("%.5f", predicted) + " (" +
                         fmt("%.2f", std::abs(s6.mean - predicted) / se) + " sigma); distance*dB:";
    bool distance_ok = true;
    for (size_t m : {4, 6, 8}) {
        auto s = m == 6 ? s6 : haar_code_purity(1, 10, m, 200, 14);
        double dse = s.distance_std / std::sqrt(double(s.samples));
        double target = 1 / s.dB;
        distance_ok = distance_ok && std::abs(s.distance_mean - target) <= 3 * dse;
        detail += " m=" + std::to_string(m) + " " + fmt("%.3f", s.distance_mean * s.dB) + " (" +
                  fmt("%.1f", std::abs(s.distance_mean - target) / dse) + " sigma)";
    }
    return {purity_ok && distance_ok, detail};
}

std::string read_bytes(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 15. Byte-identical outputs at 1 and 8 threads for every experiment kind.
Outcome determinism() {
    const char *configs[] = {
        R"({"experiment": "sweep", "code": "steane", "grid": {"resolution": 4, "pm": 0.8}, "samples": 200,
            "erasure": true})",
        R"({"experiment": "sweep", "code": "toric", "size": 5, "grid": {"resolution": 3, "pm": 0.9}, "samples": 50})",
        R"({"experiment": "concat", "code": "reed_muller_15", "grid": {"resolution": 3, "pm": 0.7}, "rounds": 3,
            "samples": 300})",
        R"({"experiment": "threshold", "code": "toric", "size": 5, "samples": 100,
            "threshold": {"rays": [[1, 0, 0]], "tolerance": 0.02, "erasure": true}})",
        R"({"experiment": "threshold", "code": "five_qubit", "rounds": 2, "samples": 200, "method": "montecarlo",
            "threshold": {"mode": "concat", "tolerance": 0.02}})",
        R"({"experiment": "ycommutant", "code": "toric", "sizes": [4, 5], "samples": 100,
            "ycommutant": {"pY": [0.7, 1.0]}})",
        R"({"experiment": "haar", "samples": 20, "haar": {"n": 6, "m": [2, 4]}})",
        R"({"experiment": "haar", "code": "five_qubit", "samples": 20,
            "haar": {"mode": "code", "measured": [[0, 1]]}})",
    };
    auto dir = std::filesystem::temp_directory_path() / ("qmon_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    size_t compared = 0, differing = 0;
    for (size_t i = 0; i < std::size(configs); i++) {
        for (const char *format : {"csv", "json"}) {
            std::string files[2];
            for (size_t t = 0; t < 2; t++) {
                auto cfg = parse_config(configs[i]);
                cfg.seed = 15;
                cfg.threads = t == 0 ? 1 : 8;
                auto path = dir / ("run" + std::to_string(i) + "_" + std::to_string(t) + "." + format);
                emit(run_experiment(cfg), cfg, path.string(), format);
                files[t] = read_bytes(path);
            }
            compared++;
            differing += files[0] == files[1] && !files[0].empty() ? 0 : 1;
        }
    }
    std::filesystem::remove_all(dir);
    return {differing == 0,
            std::to_string(compared) + " output files compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> expect_fail;
    for (int i = 1; i < argc; i++) {
        std::string arg = argv[i];
        const std::string key = "--expect-fail=";
        if (arg.rfind(key, 0) != 0) {
            std::fprintf(stderr, "usage: %s [--expect-fail=N,M,...]\n", argv[0]);
            return 2;
        }
        std::stringstream list(arg.substr(key.size()));
        for (std::string item; std::getline(list, item, ',');) {
            expect_fail.insert(std::stoi(item));
        }
    }

    struct Criterion {
        int id;
        const char *name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "five-qubit closed form", five_qubit_closed_form},
        {2, "five-qubit universality at p_m=0.95", five_qubit_universality},
        {3, "five-qubit uniform classes at p_m=1", five_qubit_uniform_classes},
        {4, "steane phase diagram", steane_phase_diagram},
        {5, "15-qubit threshold", reed_muller_threshold},
        {6, "toric preservation L=21", toric_preservation},
        {7, "toric X-only threshold", toric_percolation},
        {8, "Y-commutant structure", y_commutant_structure},
        {9, "all-Y measured classes", all_y_classes},
        {10, "color code d=21", color_code},
        {11, "Bacon-Shor L=20", bacon_shor_fragile},
        {12, "erasure-correctable implies preserved", erasure_implies_preserved},
        {13, "oracle equivalence", oracle_equivalence},
        {14, "Haar purity and distance", haar_purity},
        {15, "determinism across thread counts", determinism},
    };

    int passed = 0, unexpected = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool expected = expect_fail.count(c.id) != 0;
        passed += o.pass ? 1 : 0;
        unexpected += o.pass == expected ? 1 : 0;
        std::printf("%s %2d %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    !o.pass && expected ? " (expected)" : "");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", passed, std::size(criteria));
    return unexpected == 0 ? 0 : 1;
}
