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

#ifndef QMON_EXPERIMENT_H
#define QMON_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmon/monitor.h"

namespace qmon {

/// Malformed or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reading a config or writing results failed (CLI exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Sweep, Concat, Threshold, YCommutant, Haar };

const char *experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// Probability points for sweeps. With `pm` set, the points (explicit or the
/// simplex grid) are relative frequencies scaled by pm; otherwise explicit
/// points are absolute (pX, pY, pZ) and the grid covers pX + pY + pZ <= 1.
struct GridSpec {
    size_t resolution = 20;
    std::vector<ProbabilityVector> points;
    std::optional<double> pm;

    std::vector<ProbabilityVector> expand() const;
};

struct ThresholdSpec {
    std::vector<std::array<double, 3>> rays = {{1.0 / 3, 1.0 / 3, 1.0 / 3}};
    double tolerance = 0.01;
    /// "single": one code block; "concat": final p_none after `rounds`.
    std::string mode = "single";
    /// Also bisect the erasure threshold (single mode only).
    bool erasure = false;
    /// Extra coarse scans (with doubled samples) when the scan is not monotone.
    size_t max_rescans = 2;
};

struct HaarSpec {
    /// "random_code" or "code".
    std::string mode = "random_code";
    size_t k = 1;
    size_t n = 10;
    std::vector<size_t> m = {4, 6, 8};
    /// "computational" or "haar" (random_code mode).
    std::string basis = "computational";
    /// Measured subsets (code mode).
    std::vector<std::vector<size_t>> measured;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Sweep;
    std::string code = "five_qubit";
    /// Lattice sizes or distances; {0} for fixed-size codes.
    std::vector<size_t> sizes = {0};
    GridSpec grid;
    size_t rounds = 1;
    size_t samples = 1000;
    uint64_t seed = 0;
    /// Concatenation method: "auto", "exhaustive" or "montecarlo".
    std::string method = "auto";
    /// Sweep: also report how often the measured set is erasure-correctable.
    bool erasure = false;
    ThresholdSpec threshold;
    HaarSpec haar;
    std::vector<double> y_probabilities = {0.5, 0.9};
    std::string out;
    std::string format = "csv";
    size_t threads = 0;
};

/// Parses a JSON config; unknown keys and invalid values raise ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string &path);
std::string config_to_json(const ExperimentConfig &cfg);

using Cell = std::variant<std::string, int64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Header plus one line per row; doubles with 9 significant digits, NaN as "nan".
std::string to_csv(const Table &table);
/// {"experiment", "config", "columns", "rows"}; NaN as null.
std::string to_json(const Table &table, const ExperimentConfig &cfg);
/// Writes to `path` ("" or "-" for stdout). Throws IoError.
void emit(const Table &table, const ExperimentConfig &cfg, const std::string &path, std::string_view format);

struct ResultRow {
    std::string code;
    size_t size = 0;
    size_t rounds = 1;
    ProbabilityVector p;
    size_t samples = 0;
    uint64_t seed = 0;
    double preserved = 0;
    double std_err = 0;
    /// Frequencies of single measured classes (k = 1 codes).
    double p_X = 0;
    double p_Y = 0;
    double p_Z = 0;
    /// Destroyed with any other measured set.
    double p_other = 0;
    double renyi2 = 0;
    /// Fraction of samples whose measured set is erasure-correctable (NaN if off).
    double erasure = 0;
    /// Counts per measured-class label, sorted by label.
    std::vector<std::pair<std::string, size_t>> classes;
};

/// Monte Carlo estimate at one point, samples keyed by (seed, stream, index).
ResultRow sample_point(const Monitor &monitor, size_t size, const ProbabilityVector &p, size_t samples, uint64_t seed,
                       uint64_t stream, bool erasure, size_t threads);

struct Bisection {
    double estimate = 0;
    double lo = 0;
    double hi = 1;
    double f_lo = 1;
    double f_hi = 0;
    size_t evaluations = 0;
    std::string warning;
};

/// Threshold of a decreasing f on [0, 1]: the p where f crosses 1/2.
/// f is first scanned at p = 0, 0.1, ..., 1; if a scan point with f >= 1/2
/// follows one with f < 1/2, the scan is repeated with `attempt` + 1 (callers
/// double their samples) up to `max_rescans` times, then the first crossing
/// is bisected down to `tolerance`, with a warning recorded.
Bisection bisect_threshold(const std::function<double(double, size_t)> &f, double tolerance, size_t max_rescans);

Table run_sweep(const ExperimentConfig &cfg);
Table run_concat(const ExperimentConfig &cfg);
Table run_threshold(const ExperimentConfig &cfg);
Table run_ycommutant(const ExperimentConfig &cfg);
Table run_haar(const ExperimentConfig &cfg);
Table run_experiment(const ExperimentConfig &cfg);

}  // namespace qmon

#endif
