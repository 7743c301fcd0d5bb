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

#include "qmon/concat.h"

#include <array>
#include <cmath>
#include <cstdio>

#include "qmon/errors.h"
#include "qmon/parallel.h"
#include "qmon/rng.h"

namespace qmon {

namespace {

void require_block_code(const CodeSpec &code) {
    if (code.k != 1 || code.is_subsystem()) {
        throw ContractViolation("concatenation needs a k = 1 stabilizer code, got " + code.name);
    }
}

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void OutcomeDistribution::check() const {
    for (double v : {p_none, pX, pY, pZ}) {
        if (!std::isfinite(v) || v < 0) {
            throw ContractViolation("outcome probabilities must be finite and nonnegative");
        }
    }
    if (std::abs(p_none + pX + pY + pZ - 1) > 1e-12) {
        throw ContractViolation("outcome probabilities must sum to 1");
    }
}

OutcomeDistribution OutcomeDistribution::from_probabilities(const ProbabilityVector &p) {
    p.check();
    return {1 - p.pm(), p.pX, p.pY, p.pZ};
}

OutcomeDistribution level_map_exhaustive(const Monitor &monitor, const OutcomeDistribution &d) {
    const CodeSpec &code = monitor.code();
    require_block_code(code);
    if (code.n > Monitor::kTableMaxQubits) {
        throw UnsupportedOperation("level_map_exhaustive: n = " + std::to_string(code.n) +
                                   " is too large for enumeration, use Monte Carlo");
    }
    d.check();
    // Indexed by the Pauli encoding: I = 0, X = 1, Z = 2, Y = 3.
    std::array<long double, 4> site = {d.p_none, d.pX, d.pZ, d.pY};
    size_t n = code.n;
    size_t total = size_t{1} << (2 * n);
    std::array<long double, 4> acc{};
    MeasurementPattern pat(n);
    for (size_t idx = 0; idx < total; idx++) {
        long double w = 1;
        for (size_t q = 0; q < n && w != 0; q++) {
            size_t a = (idx >> (2 * q)) & 3;
            pat[q] = Pauli(a);
            w *= site[a];
        }
        if (w == 0) {
            continue;
        }
        acc[size_t(monitor.bucket(pat))] += w;
    }
    // The weights sum to (sum of site probabilities)^n = 1; dividing by the
    // accumulated mass keeps rounding from drifting across rounds.
    long double mass = acc[0] + acc[1] + acc[2] + acc[3];
    return {double(acc[0] / mass), double(acc[size_t(Bucket::X)] / mass), double(acc[size_t(Bucket::Y)] / mass),
            double(acc[size_t(Bucket::Z)] / mass)};
}

OutcomeDistribution level_map_exhaustive(const CodeSpec &code, const OutcomeDistribution &d) {
    return level_map_exhaustive(Monitor(code), d);
}

OutcomeDistribution level_map_montecarlo(const Monitor &monitor, const OutcomeDistribution &d, size_t samples,
                                         uint64_t seed, uint64_t stream, size_t threads) {
    const CodeSpec &code = monitor.code();
    require_block_code(code);
    if (samples == 0) {
        throw ContractViolation("level_map_montecarlo: samples must be positive");
    }
    d.check();
    ProbabilityVector p = d.measured();
    std::vector<uint8_t> out(samples);
    parallel_for(samples, threads, [&](size_t i) {
        auto rng = stream_rng(seed, stream, i);
        out[i] = uint8_t(monitor.bucket(sample_pattern(code.n, p, rng)));
    });
    std::array<size_t, 4> counts{};
    for (uint8_t b : out) {
        counts[b]++;
    }
    double s = double(samples);
    return {counts[0] / s, counts[size_t(Bucket::X)] / s, counts[size_t(Bucket::Y)] / s,
            counts[size_t(Bucket::Z)] / s};
}

FlowTrace flow(const Monitor &monitor, const OutcomeDistribution &d0, size_t rounds, FlowMethod method,
               size_t samples, uint64_t seed, uint64_t stream, size_t threads) {
    if (rounds == 0) {
        throw ContractViolation("flow: rounds must be at least 1");
    }
    FlowTrace trace;
    trace.code = monitor.code().name;
    trace.method = method;
    trace.samples = method == FlowMethod::MonteCarlo ? samples : 0;
    trace.rounds.push_back(d0);
    for (size_t r = 0; r < rounds; r++) {
        const auto &cur = trace.rounds.back();
        if (method == FlowMethod::Exhaustive) {
            trace.rounds.push_back(level_map_exhaustive(monitor, cur));
        } else {
            trace.rounds.push_back(level_map_montecarlo(monitor, cur, samples, seed, stream * 1024 + r, threads));
        }
    }
    return trace;
}

double renyi2(std::span<const double> probs, double base) {
    if (base == 0) {
        base = double(probs.size());
    }
    double total = 0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0) {
            throw ContractViolation("renyi2: probabilities must be nonnegative");
        }
        total += p;
    }
    if (!(total > 0)) {
        throw UndefinedInput("renyi2: zero total mass");
    }
    double sum_sq = 0;
    for (double p : probs) {
        sum_sq += (p / total) * (p / total);
    }
    double v = -std::log(sum_sq) / std::log(base);
    return v == 0 ? 0.0 : v;
}

double renyi2_uncertainty(const OutcomeDistribution &d) {
    std::array<double, 3> m = {d.pX, d.pY, d.pZ};
    return renyi2(m, 3);
}

std::string flow_to_csv(const FlowTrace &trace) {
    std::string out = "round,p_none,pX,pY,pZ,renyi2\n";
    for (size_t r = 0; r < trace.rounds.size(); r++) {
        const auto &d = trace.rounds[r];
        double s = d.pm() > 0 ? renyi2_uncertainty(d) : std::nan("");
        out += std::to_string(r) + "," + fmt(d.p_none) + "," + fmt(d.pX) + "," + fmt(d.pY) + "," + fmt(d.pZ) + "," +
               fmt(s) + "\n";
    }
    return out;
}

}  // namespace qmon
