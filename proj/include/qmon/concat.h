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

#ifndef QMON_CONCAT_H
#define QMON_CONCAT_H

#include <span>
#include <string>
#include <vector>

#include "qmon/monitor.h"

namespace qmon {

/// Per-qubit (or per-block) outcome: untouched, or measured in X, Y, Z.
struct OutcomeDistribution {
    double p_none = 1;
    double pX = 0;
    double pY = 0;
    double pZ = 0;

    double pm() const {
        return pX + pY + pZ;
    }
    /// Throws ContractViolation unless nonnegative and summing to 1 within 1e-12.
    void check() const;
    static OutcomeDistribution from_probabilities(const ProbabilityVector &p);
    ProbabilityVector measured() const {
        return {pX, pY, pZ};
    }
};

enum class FlowMethod { Exhaustive, MonteCarlo };

struct FlowTrace {
    std::string code;
    FlowMethod method = FlowMethod::Exhaustive;
    size_t samples = 0;
    /// rounds[0] is the physical distribution.
    std::vector<OutcomeDistribution> rounds;
};

/// Exact map over all 4^n patterns. Requires a k = 1 stabilizer code with
/// n <= Monitor::kTableMaxQubits.
OutcomeDistribution level_map_exhaustive(const Monitor &monitor, const OutcomeDistribution &d);
OutcomeDistribution level_map_exhaustive(const CodeSpec &code, const OutcomeDistribution &d);

/// Frequency estimate from `samples` patterns. Sample i draws from
/// stream_rng(seed, stream, i).
OutcomeDistribution level_map_montecarlo(const Monitor &monitor, const OutcomeDistribution &d, size_t samples,
                                         uint64_t seed, uint64_t stream = 0, size_t threads = 0);

/// Iterates the level map. Monte Carlo round r uses stream `stream * 1024 + r`.
FlowTrace flow(const Monitor &monitor, const OutcomeDistribution &d0, size_t rounds, FlowMethod method,
               size_t samples = 1000, uint64_t seed = 0, uint64_t stream = 0, size_t threads = 0);

/// -log_base(sum q_i^2) of the normalized `probs`; base defaults to the
/// number of entries. Throws UndefinedInput when the total mass is zero.
double renyi2(std::span<const double> probs, double base = 0);

/// Renyi-2 uncertainty of which logical got measured, conditioned on the
/// block being destroyed: arity 3 uses (pX, pY, pZ) in base 3.
double renyi2_uncertainty(const OutcomeDistribution &d);

/// CSV with header round,p_none,pX,pY,pZ,renyi2; renyi2 is "nan" when no
/// mass is measured.
std::string flow_to_csv(const FlowTrace &trace);

}  // namespace qmon

#endif
