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

#include "qmon/experiment.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qmon/concat.h"
#include "qmon/errors.h"
#include "qmon/haar.h"
#include "qmon/parallel.h"
#include "qmon/rng.h"
#include "qmon/toric_y.h"

namespace qmon {

namespace {

using json = nlohmann::ordered_json;

// Stream tags so different experiments never share generators.
constexpr uint64_t kTagSweep = 1;
constexpr uint64_t kTagConcat = 2;
constexpr uint64_t kTagThreshold = 3;
constexpr uint64_t kTagErasure = 4;
constexpr uint64_t kTagY = 5;
constexpr uint64_t kTagHaar = 6;

uint64_t stream_key(uint64_t tag, uint64_t a, uint64_t b = 0) {
    return splitmix64(tag ^ splitmix64(a ^ splitmix64(b)));
}

uint64_t double_key(double v) {
    return std::bit_cast<uint64_t>(v);
}

double nan() {
    return std::nan("");
}

std::string fmt9(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json json_number(double v) {
    if (!std::isfinite(v)) {
        return json();
    }
    return std::strtod(fmt9(v).c_str(), nullptr);
}

double binomial_se(double f, size_t n) {
    return std::sqrt(f * (1 - f) / double(n));
}

// ---- config parsing ----

[[noreturn]] void config_fail(const std::string &msg) {
    throw ConfigError(msg);
}

void check_keys(const json &j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) {
            ok = ok || it.key() == a;
        }
        if (!ok) {
            config_fail("unknown key '" + it.key() + "' in " + std::string(where));
        }
    }
}

std::array<double, 3> triple(const json &j, std::string_view what) {
    if (!j.is_array() || j.size() != 3) {
        config_fail(std::string(what) + " must be an array of three numbers");
    }
    std::array<double, 3> out{};
    for (size_t i = 0; i < 3; i++) {
        if (!j[i].is_number()) {
            config_fail(std::string(what) + " must be an array of three numbers");
        }
        out[i] = j[i].get<double>();
        if (!std::isfinite(out[i]) || out[i] < 0) {
            config_fail(std::string(what) + " entries must be nonnegative");
        }
    }
    return out;
}

template <typename T>
T get_as(const json &j, std::string_view key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception &) {
        config_fail("key '" + std::string(key) + "' has the wrong type");
    }
}

size_t get_count(const json &j, std::string_view key) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0)) {
        config_fail("key '" + std::string(key) + "' must be a nonnegative integer");
    }
    return j.get<size_t>();
}

double get_probability(const json &j, std::string_view key) {
    if (!j.is_number()) {
        config_fail("key '" + std::string(key) + "' must be a number");
    }
    double v = j.get<double>();
    if (!(v >= 0 && v <= 1)) {
        config_fail("key '" + std::string(key) + "' must lie in [0, 1]");
    }
    return v;
}

void validate_config(const ExperimentConfig &cfg) {
    if (cfg.samples == 0) {
        config_fail("samples must be at least 1");
    }
    if (cfg.sizes.empty()) {
        config_fail("sizes must not be empty");
    }
    for (size_t s : cfg.sizes) {
        try {
            (void)make_code(cfg.code, s);
        } catch (const std::exception &e) {
            config_fail("code '" + cfg.code + "' size " + std::to_string(s) + ": " + e.what());
        }
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        config_fail("format must be csv or json");
    }
    if (cfg.method != "auto" && cfg.method != "exhaustive" && cfg.method != "montecarlo") {
        config_fail("method must be auto, exhaustive or montecarlo");
    }
    if (cfg.grid.resolution == 0) {
        config_fail("grid resolution must be at least 1");
    }
    try {
        (void)cfg.grid.expand();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        config_fail(std::string("invalid grid: ") + e.what());
    }
    if (cfg.kind == ExperimentKind::Concat || cfg.kind == ExperimentKind::Threshold) {
        if (cfg.rounds == 0) {
            config_fail("rounds must be at least 1");
        }
    }
    if (cfg.kind == ExperimentKind::Concat) {
        if (cfg.code != "five_qubit" && cfg.code != "steane" && cfg.code != "reed_muller_15") {
            config_fail("concat supports five_qubit, steane and reed_muller_15");
        }
    }
    if (cfg.kind == ExperimentKind::Threshold) {
        const auto &t = cfg.threshold;
        if (t.rays.empty()) {
            config_fail("threshold.rays must not be empty");
        }
        for (const auto &r : t.rays) {
            if (std::abs(r[0] + r[1] + r[2] - 1) > 1e-9) {
                config_fail("threshold rays must sum to 1");
            }
        }
        if (!(t.tolerance > 0 && t.tolerance < 1)) {
            config_fail("threshold.tolerance must lie in (0, 1)");
        }
        if (t.mode != "single" && t.mode != "concat") {
            config_fail("threshold.mode must be single or concat");
        }
        if (t.mode == "concat" && cfg.code != "five_qubit" && cfg.code != "steane" && cfg.code != "reed_muller_15") {
            config_fail("concat thresholds support five_qubit, steane and reed_muller_15");
        }
    }
    if (cfg.kind == ExperimentKind::YCommutant) {
        if (cfg.code != "toric") {
            config_fail("ycommutant runs on the toric code");
        }
        for (double p : cfg.y_probabilities) {
            if (!(p >= 0 && p <= 1)) {
                config_fail("ycommutant.pY entries must lie in [0, 1]");
            }
        }
    }
    if (cfg.kind == ExperimentKind::Haar) {
        const auto &h = cfg.haar;
        if (h.mode == "random_code") {
            if (h.k >= h.n || h.n + h.k > kDenseMaxQubits) {
                config_fail("haar: need k < n and n + k <= " + std::to_string(kDenseMaxQubits));
            }
            for (size_t m : h.m) {
                if (m > h.n) {
                    config_fail("haar: m must not exceed n");
                }
            }
            if (h.basis != "computational" && h.basis != "haar") {
                config_fail("haar.basis must be computational or haar");
            }
        } else if (h.mode == "code") {
            for (size_t s : cfg.sizes) {
                auto code = make_code(cfg.code, s);
                if (code.is_subsystem() || code.n + code.k > kDenseMaxQubits) {
                    config_fail("haar code mode needs a stabilizer code with n + k <= " +
                                std::to_string(kDenseMaxQubits));
                }
                for (const auto &set : h.measured) {
                    std::set<size_t> seen;
                    for (size_t q : set) {
                        if (q >= code.n || !seen.insert(q).second) {
                            config_fail("haar.measured entries must be distinct qubits below n");
                        }
                    }
                }
            }
        } else {
            config_fail("haar.mode must be random_code or code");
        }
    }
}

json grid_json(const GridSpec &g) {
    json j;
    if (g.points.empty()) {
        j["resolution"] = g.resolution;
    } else {
        json pts = json::array();
        for (const auto &p : g.points) {
            pts.push_back({p.pX, p.pY, p.pZ});
        }
        j["points"] = pts;
    }
    if (g.pm) {
        j["pm"] = *g.pm;
    }
    return j;
}

// ---- table helpers ----

std::string csv_cell(const Cell &c) {
    if (const auto *s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos) {
            return *s;
        }
        std::string out = "\"";
        for (char ch : *s) {
            if (ch == '"') {
                out += '"';
            }
            out += ch;
        }
        return out + "\"";
    }
    if (const auto *i = std::get_if<int64_t>(&c)) {
        return std::to_string(*i);
    }
    return fmt9(std::get<double>(c));
}

json json_cell(const Cell &c) {
    if (const auto *s = std::get_if<std::string>(&c)) {
        return *s;
    }
    if (const auto *i = std::get_if<int64_t>(&c)) {
        return *i;
    }
    return json_number(std::get<double>(c));
}

Cell num(double v) {
    return Cell(v);
}

Cell count(size_t v) {
    return Cell(int64_t(v));
}

Cell text(std::string s) {
    return Cell(std::move(s));
}

std::string classes_cell(const std::vector<std::pair<std::string, size_t>> &classes) {
    std::string out;
    for (const auto &[label, c] : classes) {
        if (!out.empty()) {
            out += ";";
        }
        out += label + ":" + std::to_string(c);
    }
    return out;
}

CodeSpec config_code(const ExperimentConfig &cfg, size_t size) {
    return make_code(cfg.code, size);
}

bool use_exhaustive(const ExperimentConfig &cfg, const CodeSpec &code) {
    if (cfg.method == "exhaustive") {
        return true;
    }
    if (cfg.method == "montecarlo") {
        return false;
    }
    return code.n <= Monitor::kTableMaxQubits;
}

}  // namespace

const char *experiment_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Sweep:
            return "sweep";
        case ExperimentKind::Concat:
            return "concat";
        case ExperimentKind::Threshold:
            return "threshold";
        case ExperimentKind::YCommutant:
            return "ycommutant";
        case ExperimentKind::Haar:
            return "haar";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (auto k : {ExperimentKind::Sweep, ExperimentKind::Concat, ExperimentKind::Threshold, ExperimentKind::YCommutant,
                   ExperimentKind::Haar}) {
        if (name == experiment_name(k)) {
            return k;
        }
    }
    config_fail("unknown experiment '" + std::string(name) + "'");
}

std::vector<ProbabilityVector> GridSpec::expand() const {
    std::vector<ProbabilityVector> out;
    if (pm && !(*pm >= 0 && *pm <= 1)) {
        config_fail("grid pm must lie in [0, 1]");
    }
    if (!points.empty()) {
        for (const auto &p : points) {
            if (pm) {
                if (std::abs(p.pm() - 1) > 1e-9) {
                    config_fail("grid points are frequencies when pm is set and must sum to 1");
                }
                out.push_back({*pm * p.pX, *pm * p.pY, *pm * p.pZ});
            } else {
                p.check();
                out.push_back(p);
            }
        }
        return out;
    }
    double R = double(resolution);
    for (size_t i = 0; i <= resolution; i++) {
        for (size_t j = 0; i + j <= resolution; j++) {
            if (pm) {
                size_t l = resolution - i - j;
                out.push_back({*pm * (i / R), *pm * (j / R), *pm * (l / R)});
            } else {
                for (size_t l = 0; i + j + l <= resolution; l++) {
                    out.push_back({i / R, j / R, l / R});
                }
            }
        }
    }
    return out;
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        config_fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        config_fail("config must be a JSON object");
    }
    check_keys(j,
               {"experiment", "code", "size", "sizes", "grid", "rounds", "samples", "seed", "method", "erasure",
                "threshold", "haar", "ycommutant", "out", "format", "threads"},
               "config");
    ExperimentConfig cfg;
    if (!j.contains("experiment")) {
        config_fail("config needs an 'experiment' key");
    }
    cfg.kind = parse_experiment_kind(get_as<std::string>(j["experiment"], "experiment"));
    if (j.contains("code")) {
        cfg.code = get_as<std::string>(j["code"], "code");
    }
    if (j.contains("size") && j.contains("sizes")) {
        config_fail("give either 'size' or 'sizes', not both");
    }
    if (j.contains("size")) {
        cfg.sizes = {get_count(j["size"], "size")};
    }
    if (j.contains("sizes")) {
        if (!j["sizes"].is_array()) {
            config_fail("sizes must be an array");
        }
        cfg.sizes.clear();
        for (const auto &s : j["sizes"]) {
            cfg.sizes.push_back(get_count(s, "sizes"));
        }
    }
    if (j.contains("grid")) {
        const auto &g = j["grid"];
        if (!g.is_object()) {
            config_fail("grid must be an object");
        }
        check_keys(g, {"resolution", "points", "pm"}, "grid");
        if (g.contains("resolution")) {
            cfg.grid.resolution = get_count(g["resolution"], "grid.resolution");
        }
        if (g.contains("points")) {
            if (!g["points"].is_array()) {
                config_fail("grid.points must be an array");
            }
            for (const auto &p : g["points"]) {
                auto t = triple(p, "grid point");
                cfg.grid.points.push_back({t[0], t[1], t[2]});
            }
        }
        if (g.contains("pm")) {
            cfg.grid.pm = get_probability(g["pm"], "grid.pm");
        }
    }
    if (j.contains("rounds")) {
        cfg.rounds = get_count(j["rounds"], "rounds");
    }
    if (j.contains("samples")) {
        cfg.samples = get_count(j["samples"], "samples");
    }
    if (j.contains("seed")) {
        cfg.seed = get_count(j["seed"], "seed");
    }
    if (j.contains("method")) {
        cfg.method = get_as<std::string>(j["method"], "method");
    }
    if (j.contains("erasure")) {
        cfg.erasure = get_as<bool>(j["erasure"], "erasure");
    }
    if (j.contains("threshold")) {
        const auto &t = j["threshold"];
        if (!t.is_object()) {
            config_fail("threshold must be an object");
        }
        check_keys(t, {"rays", "tolerance", "mode", "erasure", "max_rescans"}, "threshold");
        if (t.contains("rays")) {
            if (!t["rays"].is_array()) {
                config_fail("threshold.rays must be an array");
            }
            cfg.threshold.rays.clear();
            for (const auto &r : t["rays"]) {
                cfg.threshold.rays.push_back(triple(r, "threshold ray"));
            }
        }
        if (t.contains("tolerance")) {
            cfg.threshold.tolerance = get_probability(t["tolerance"], "threshold.tolerance");
        }
        if (t.contains("mode")) {
            cfg.threshold.mode = get_as<std::string>(t["mode"], "threshold.mode");
        }
        if (t.contains("erasure")) {
            cfg.threshold.erasure = get_as<bool>(t["erasure"], "threshold.erasure");
        }
        if (t.contains("max_rescans")) {
            cfg.threshold.max_rescans = get_count(t["max_rescans"], "threshold.max_rescans");
        }
    }
    if (j.contains("ycommutant")) {
        const auto &y = j["ycommutant"];
        if (!y.is_object()) {
            config_fail("ycommutant must be an object");
        }
        check_keys(y, {"pY"}, "ycommutant");
        if (y.contains("pY")) {
            if (!y["pY"].is_array()) {
                config_fail("ycommutant.pY must be an array");
            }
            cfg.y_probabilities.clear();
            for (const auto &p : y["pY"]) {
                cfg.y_probabilities.push_back(get_probability(p, "ycommutant.pY"));
            }
        }
    }
    if (j.contains("haar")) {
        const auto &h = j["haar"];
        if (!h.is_object()) {
            config_fail("haar must be an object");
        }
        check_keys(h, {"mode", "k", "n", "m", "basis", "measured"}, "haar");
        if (h.contains("mode")) {
            cfg.haar.mode = get_as<std::string>(h["mode"], "haar.mode");
        }
        if (h.contains("k")) {
            cfg.haar.k = get_count(h["k"], "haar.k");
        }
        if (h.contains("n")) {
            cfg.haar.n = get_count(h["n"], "haar.n");
        }
        if (h.contains("m")) {
            if (!h["m"].is_array()) {
                config_fail("haar.m must be an array");
            }
            cfg.haar.m.clear();
            for (const auto &m : h["m"]) {
                cfg.haar.m.push_back(get_count(m, "haar.m"));
            }
        }
        if (h.contains("basis")) {
            cfg.haar.basis = get_as<std::string>(h["basis"], "haar.basis");
        }
        if (h.contains("measured")) {
            if (!h["measured"].is_array()) {
                config_fail("haar.measured must be an array of qubit lists");
            }
            for (const auto &set : h["measured"]) {
                if (!set.is_array()) {
                    config_fail("haar.measured must be an array of qubit lists");
                }
                std::vector<size_t> qs;
                for (const auto &q : set) {
                    qs.push_back(get_count(q, "haar.measured"));
                }
                cfg.haar.measured.push_back(std::move(qs));
            }
        }
    }
    if (j.contains("out")) {
        cfg.out = get_as<std::string>(j["out"], "out");
    }
    if (j.contains("format")) {
        cfg.format = get_as<std::string>(j["format"], "format");
    }
    if (j.contains("threads")) {
        cfg.threads = get_count(j["threads"], "threads");
    }
    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig &cfg) {
    json j;
    j["experiment"] = experiment_name(cfg.kind);
    j["code"] = cfg.code;
    j["sizes"] = cfg.sizes;
    j["grid"] = grid_json(cfg.grid);
    j["rounds"] = cfg.rounds;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["method"] = cfg.method;
    j["erasure"] = cfg.erasure;
    json rays = json::array();
    for (const auto &r : cfg.threshold.rays) {
        rays.push_back({r[0], r[1], r[2]});
    }
    j["threshold"] = {{"rays", rays},
                      {"tolerance", cfg.threshold.tolerance},
                      {"mode", cfg.threshold.mode},
                      {"erasure", cfg.threshold.erasure},
                      {"max_rescans", cfg.threshold.max_rescans}};
    j["ycommutant"] = {{"pY", cfg.y_probabilities}};
    j["haar"] = {{"mode", cfg.haar.mode}, {"k", cfg.haar.k},         {"n", cfg.haar.n},
                 {"m", cfg.haar.m},       {"basis", cfg.haar.basis}, {"measured", cfg.haar.measured}};
    j["format"] = cfg.format;
    return j.dump(2);
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table row has " + std::to_string(row.size()) + " cells for " +
                               std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::string to_csv(const Table &table) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); i++) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            out += (i ? "," : "") + csv_cell(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const Table &table, const ExperimentConfig &cfg) {
    json j;
    j["experiment"] = experiment_name(cfg.kind);
    j["config"] = json::parse(config_to_json(cfg));
    j["columns"] = table.columns;
    json rows = json::array();
    for (const auto &row : table.rows) {
        json r;
        for (size_t i = 0; i < row.size(); i++) {
            r[table.columns[i]] = json_cell(row[i]);
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void emit(const Table &table, const ExperimentConfig &cfg, const std::string &path, std::string_view format) {
    std::string body;
    if (format == "csv") {
        body = to_csv(table);
    } else if (format == "json") {
        body = to_json(table, cfg);
    } else {
        throw ConfigError("format must be csv or json");
    }
    if (path.empty() || path == "-") {
        std::cout << body;
        std::cout.flush();
        if (!std::cout) {
            throw IoError("writing to stdout failed");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << body;
    out.close();
    if (!out) {
        throw IoError("writing '" + path + "' failed");
    }
}

ResultRow sample_point(const Monitor &monitor, size_t size, const ProbabilityVector &p, size_t samples, uint64_t seed,
                       uint64_t stream, bool erasure, size_t threads) {
    if (samples == 0) {
        throw ContractViolation("sample_point: samples must be positive");
    }
    const CodeSpec &code = monitor.code();
    bool fast_bucket = code.k == 1 && !code.is_subsystem();
    struct Outcome {
        std::string label;
        bool erasure_ok = false;
    };
    std::vector<Outcome> outcomes(samples);
    parallel_for(samples, threads, [&](size_t i) {
        auto rng = stream_rng(seed, stream, i);
        auto pat = sample_pattern(code.n, p, rng);
        Outcome o;
        if (fast_bucket) {
            Bucket b = monitor.bucket(pat);
            o.label = b == Bucket::None ? "none" : std::string(bucket_name(b)) + "1";
        } else {
            o.label = logical_set_label(monitor.verdict(pat).measured_logicals);
        }
        if (erasure) {
            auto set = pat.measured_set();
            o.erasure_ok = monitor.erasure_correctable(set);
        }
        outcomes[i] = std::move(o);
    });
    ResultRow row;
    row.code = code.name;
    row.size = size;
    row.p = p;
    row.samples = samples;
    row.seed = seed;
    std::map<std::string, size_t> counts;
    size_t erasure_ok = 0;
    for (const auto &o : outcomes) {
        counts[o.label]++;
        erasure_ok += o.erasure_ok ? 1 : 0;
    }
    double n = double(samples);
    row.preserved = counts.count("none") ? counts["none"] / n : 0.0;
    row.std_err = binomial_se(row.preserved, samples);
    double other = 0;
    for (const auto &[label, c] : counts) {
        if (label == "none") {
            continue;
        }
        row.classes.emplace_back(label, c);
        if (code.k == 1 && label == "X1") {
            row.p_X = c / n;
        } else if (code.k == 1 && label == "Y1") {
            row.p_Y = c / n;
        } else if (code.k == 1 && label == "Z1") {
            row.p_Z = c / n;
        } else {
            other += c;
        }
    }
    row.p_other = other / n;
    double single = row.p_X + row.p_Y + row.p_Z;
    if (code.k == 1 && single > 0) {
        std::array<double, 3> m = {row.p_X, row.p_Y, row.p_Z};
        row.renyi2 = renyi2(m, 3);
    } else {
        row.renyi2 = nan();
    }
    row.erasure = erasure ? erasure_ok / n : nan();
    return row;
}

Bisection bisect_threshold(const std::function<double(double, size_t)> &f, double tolerance, size_t max_rescans) {
    constexpr size_t kScan = 10;
    Bisection out;
    std::vector<double> vals(kScan + 1);
    size_t first_bad = kScan + 1;
    size_t attempt = 0;
    for (;; attempt++) {
        for (size_t i = 0; i <= kScan; i++) {
            vals[i] = f(double(i) / kScan, attempt);
            out.evaluations++;
        }
        first_bad = kScan + 1;
        bool later_good = false;
        for (size_t i = 0; i <= kScan; i++) {
            if (vals[i] < 0.5 && first_bad > kScan) {
                first_bad = i;
            } else if (vals[i] >= 0.5 && first_bad <= kScan) {
                later_good = true;
            }
        }
        if (!later_good) {
            if (attempt > 0) {
                out.warning = "non-monotone scan resolved with more samples";
            }
            break;
        }
        if (attempt == max_rescans) {
            out.warning = "non-monotone scan; first crossing used";
            break;
        }
    }
    if (first_bad > kScan) {
        out.estimate = out.lo = out.hi = 1;
        out.f_lo = out.f_hi = vals[kScan];
        return out;
    }
    if (first_bad == 0) {
        out.estimate = out.lo = out.hi = 0;
        out.f_lo = out.f_hi = vals[0];
        return out;
    }
    double lo = double(first_bad - 1) / kScan, hi = double(first_bad) / kScan;
    double f_lo = vals[first_bad - 1], f_hi = vals[first_bad];
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        double v = f(mid, attempt);
        out.evaluations++;
        if (v >= 0.5) {
            lo = mid;
            f_lo = v;
        } else {
            hi = mid;
            f_hi = v;
        }
    }
    out.estimate = 0.5 * (lo + hi);
    out.lo = lo;
    out.hi = hi;
    out.f_lo = f_lo;
    out.f_hi = f_hi;
    return out;
}

Table run_sweep(const ExperimentConfig &cfg) {
    Table t;
    t.columns = {"code", "size",  "rounds", "pX",  "pY",  "pZ",  "samples", "seed",    "preserved",
                 "std_err", "p_X", "p_Y",    "p_Z", "p_other", "renyi2", "phase", "erasure", "classes"};
    auto points = cfg.grid.expand();
    for (size_t si = 0; si < cfg.sizes.size(); si++) {
        Monitor mon(config_code(cfg, cfg.sizes[si]));
        for (size_t pi = 0; pi < points.size(); pi++) {
            auto r = sample_point(mon, cfg.sizes[si], points[pi], cfg.samples, cfg.seed,
                                  stream_key(kTagSweep, si, pi), cfg.erasure, cfg.threads);
            t.add({text(r.code), count(r.size), count(1), num(r.p.pX), num(r.p.pY), num(r.p.pZ), count(r.samples),
                   count(r.seed), num(r.preserved), num(r.std_err), num(r.p_X), num(r.p_Y), num(r.p_Z),
                   num(r.p_other), num(r.renyi2), text(r.preserved >= 0.5 ? "preserved" : "destroyed"),
                   num(r.erasure), text(classes_cell(r.classes))});
        }
    }
    return t;
}

Table run_concat(const ExperimentConfig &cfg) {
    Table t;
    t.columns = {"code", "point", "pX0", "pY0", "pZ0", "round", "p_none", "pX", "pY", "pZ", "renyi2", "method",
                 "samples", "seed"};
    Monitor mon(config_code(cfg, cfg.sizes[0]));
    bool exhaustive = use_exhaustive(cfg, mon.code());
    auto method = exhaustive ? FlowMethod::Exhaustive : FlowMethod::MonteCarlo;
    auto points = cfg.grid.expand();
    for (size_t pi = 0; pi < points.size(); pi++) {
        auto d0 = OutcomeDistribution::from_probabilities(points[pi]);
        auto trace = flow(mon, d0, cfg.rounds, method, cfg.samples, cfg.seed, stream_key(kTagConcat, pi), cfg.threads);
        for (size_t r = 0; r < trace.rounds.size(); r++) {
            const auto &d = trace.rounds[r];
            double s = d.pm() > 0 ? renyi2_uncertainty(d) : nan();
            t.add({text(mon.code().name), count(pi), num(points[pi].pX), num(points[pi].pY), num(points[pi].pZ),
                   count(r), num(d.p_none), num(d.pX), num(d.pY), num(d.pZ), num(s),
                   text(exhaustive ? "exhaustive" : "montecarlo"), count(exhaustive ? 0 : cfg.samples),
                   count(cfg.seed)});
        }
    }
    return t;
}

Table run_threshold(const ExperimentConfig &cfg) {
    Table t;
    t.columns = {"code",     "size", "rounds", "mode", "aX",    "aY",    "aZ",        "samples",          "seed",
                 "estimate", "lo",   "hi",     "f_lo", "f_hi", "evaluations", "warning", "erasure_estimate",
                 "erasure_lo", "erasure_hi"};
    const auto &spec = cfg.threshold;
    for (size_t si = 0; si < cfg.sizes.size(); si++) {
        size_t size = cfg.sizes[si];
        Monitor mon(config_code(cfg, size));
        size_t n = mon.code().n;
        bool exhaustive = use_exhaustive(cfg, mon.code());
        for (size_t ri = 0; ri < spec.rays.size(); ri++) {
            auto ray = spec.rays[ri];
            auto point = [&](double pm) { return ProbabilityVector{pm * ray[0], pm * ray[1], pm * ray[2]}; };
            std::function<double(double, size_t)> f;
            if (spec.mode == "single") {
                f = [&](double pm, size_t attempt) {
                    size_t samples = cfg.samples << attempt;
                    uint64_t stream = stream_key(kTagThreshold, stream_key(si, ri, attempt), double_key(pm));
                    return sample_point(mon, size, point(pm), samples, cfg.seed, stream, false, cfg.threads).preserved;
                };
            } else {
                f = [&](double pm, size_t attempt) {
                    size_t samples = cfg.samples << attempt;
                    auto d0 = OutcomeDistribution::from_probabilities(point(pm));
                    uint64_t stream = stream_key(kTagThreshold, stream_key(si, ri, attempt), double_key(pm));
                    auto trace = flow(mon, d0, cfg.rounds,
                                      exhaustive ? FlowMethod::Exhaustive : FlowMethod::MonteCarlo, samples, cfg.seed,
                                      stream, cfg.threads);
                    return trace.rounds.back().p_none;
                };
            }
            Bisection b = bisect_threshold(f, spec.tolerance, spec.max_rescans);
            Bisection e;
            bool have_erasure = spec.erasure && spec.mode == "single";
            if (have_erasure) {
                auto fe = [&](double pm, size_t attempt) {
                    size_t samples = cfg.samples << attempt;
                    uint64_t stream = stream_key(kTagErasure, stream_key(si, ri, attempt), double_key(pm));
                    std::vector<uint8_t> ok(samples);
                    parallel_for(samples, cfg.threads, [&](size_t i) {
                        auto rng = stream_rng(cfg.seed, stream, i);
                        std::vector<size_t> set;
                        for (size_t q = 0; q < n; q++) {
                            if (uniform01(rng) < pm) {
                                set.push_back(q);
                            }
                        }
                        ok[i] = mon.erasure_correctable(set) ? 1 : 0;
                    });
                    size_t good = 0;
                    for (uint8_t v : ok) {
                        good += v;
                    }
                    return good / double(samples);
                };
                e = bisect_threshold(fe, spec.tolerance, spec.max_rescans);
            }
            t.add({text(mon.code().name), count(size), count(spec.mode == "concat" ? cfg.rounds : 1), text(spec.mode),
                   num(ray[0]), num(ray[1]), num(ray[2]), count(cfg.samples), count(cfg.seed), num(b.estimate),
                   num(b.lo), num(b.hi), num(b.f_lo), num(b.f_hi), count(b.evaluations), text(b.warning),
                   num(have_erasure ? e.estimate : nan()), num(have_erasure ? e.lo : nan()),
                   num(have_erasure ? e.hi : nan())});
        }
    }
    return t;
}

Table run_ycommutant(const ExperimentConfig &cfg) {
    Table t;
    t.columns = {"L",     "pY",    "samples",       "seed",           "destroyed", "std_err",
                 "bound", "bound_logical", "commutant_dim", "line_rank", "classes"};
    for (size_t si = 0; si < cfg.sizes.size(); si++) {
        size_t L = cfg.sizes[si];
        Monitor mon(toric(L).code);
        size_t n = mon.code().n;
        size_t dim = y_commutant_dimension(L);
        size_t line_rank = y_line_rank(L);
        for (size_t pi = 0; pi < cfg.y_probabilities.size(); pi++) {
            double pY = cfg.y_probabilities[pi];
            std::vector<std::string> labels(cfg.samples);
            uint64_t stream = stream_key(kTagY, si, pi);
            parallel_for(cfg.samples, cfg.threads, [&](size_t i) {
                auto rng = stream_rng(cfg.seed, stream, i);
                auto pat = sample_pattern(n, ProbabilityVector{0, pY, 0}, rng);
                labels[i] = y_classify_measured(mon, pat).label;
            });
            std::map<std::string, size_t> counts;
            for (const auto &l : labels) {
                counts[l]++;
            }
            std::vector<std::pair<std::string, size_t>> classes;
            size_t destroyed = 0;
            for (const auto &[label, c] : counts) {
                if (label != "none") {
                    classes.emplace_back(label, c);
                    destroyed += c;
                }
            }
            double f = destroyed / double(cfg.samples);
            t.add({count(L), num(pY), count(cfg.samples), count(cfg.seed), num(f), num(binomial_se(f, cfg.samples)),
                   num(y_destroy_upper_bound(L, pY)), num(y_destroy_upper_bound(L, pY, YBoundTerms::LogicalOnly)),
                   count(dim), count(line_rank), text(classes_cell(classes))});
        }
    }
    return t;
}

Table run_haar(const ExperimentConfig &cfg) {
    Table t;
    t.columns = {"mode",    "code",     "k",    "n",         "m",     "dA",    "dB",
                 "dR",      "samples",  "seed", "mean",      "std",   "predicted",
                 "bound",   "distance_mean", "distance_std", "predicted_distance"};
    const auto &h = cfg.haar;
    auto add = [&](const std::string &code, size_t k, size_t n, size_t m, const PurityStats &s) {
        t.add({text(h.mode), text(code), count(k), count(n), count(m), num(s.dA), num(s.dB), num(s.dR),
               count(s.samples), count(cfg.seed), num(s.mean), num(s.std), num(s.predicted), num(s.bound),
               num(s.distance_mean), num(s.distance_std), num(s.predicted_distance)});
    };
    if (h.mode == "random_code") {
        auto basis = h.basis == "haar" ? MeasureBasis::Haar : MeasureBasis::Computational;
        for (size_t mi = 0; mi < h.m.size(); mi++) {
            uint64_t seed = stream_key(kTagHaar, cfg.seed, mi);
            auto s = haar_code_purity(h.k, h.n, h.m[mi], cfg.samples, seed, cfg.threads, basis);
            add("haar", h.k, h.n, h.m[mi], s);
        }
        return t;
    }
    for (size_t si = 0; si < cfg.sizes.size(); si++) {
        auto code = config_code(cfg, cfg.sizes[si]);
        for (size_t mi = 0; mi < h.measured.size(); mi++) {
            uint64_t seed = stream_key(kTagHaar, cfg.seed, stream_key(si, mi));
            auto s = haar_measure_code(code, h.measured[mi], cfg.samples, seed, cfg.threads);
            add(code.name, code.k, code.n, h.measured[mi].size(), s);
        }
    }
    return t;
}

Table run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.kind) {
        case ExperimentKind::Sweep:
            return run_sweep(cfg);
        case ExperimentKind::Concat:
            return run_concat(cfg);
        case ExperimentKind::Threshold:
            return run_threshold(cfg);
        case ExperimentKind::YCommutant:
            return run_ycommutant(cfg);
        case ExperimentKind::Haar:
            return run_haar(cfg);
    }
    throw std::logic_error("unknown experiment kind");
}

}  // namespace qmon
