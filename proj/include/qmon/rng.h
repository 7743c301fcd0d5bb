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

#ifndef QMON_RNG_H
#define QMON_RNG_H

#include <cstdint>
#include <random>

namespace qmon {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for work item `index` of `stream` under `seed`.
///
/// Every Monte Carlo sample draws from its own generator, so results do not
/// depend on how samples are scheduled across threads.
inline std::mt19937_64 stream_rng(uint64_t seed, uint64_t stream, uint64_t index) {
    uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ stream);
    key = splitmix64(key ^ index);
    return std::mt19937_64(key);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64 &rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qmon

#endif
