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

#ifndef QMON_MONITOR_H
#define QMON_MONITOR_H

#include <array>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmon/codes.h"

namespace qmon {

/// Per-qubit measurement basis; Pauli::I means the qubit is not measured.
struct MeasurementPattern {
    std::vector<Pauli> assignment;

    MeasurementPattern() = default;
    explicit MeasurementPattern(size_t n) : assignment(n, Pauli::I) {
    }
    explicit MeasurementPattern(std::vector<Pauli> a) : assignment(std::move(a)) {
    }
    /// Every qubit measured in basis `p`.
    static MeasurementPattern uniform(size_t n, Pauli p);
    /// Parses a string over {., X, Y, Z}.
    static MeasurementPattern from_string(std::string_view text);

    size_t n() const {
        return assignment.size();
    }
    Pauli operator[](size_t q) const {
        return assignment[q];
    }
    Pauli &operator[](size_t q) {
        return assignment[q];
    }
    std::vector<size_t> measured_set() const;
    size_t num_measured() const;
    /// The measured single-qubit Paulis as operators on n qubits.
    GeneratorSet measured_group() const;
    std::string str() const;
    bool operator==(const MeasurementPattern &) const = default;
};

struct ProbabilityVector {
    double pX = 0;
    double pY = 0;
    double pZ = 0;

    double pm() const {
        return pX + pY + pZ;
    }
    /// Throws ContractViolation unless all entries are >= 0 and p_m <= 1.
    void check() const;
    /// The point p_m * (aX, aY, aZ) on a frequency ray.
    static ProbabilityVector on_ray(double pm, double aX, double aY, double aZ);
};

MeasurementPattern sample_pattern(size_t n, const ProbabilityVector &p, std::mt19937_64 &rng);
/// Deterministic in (seed, index).
MeasurementPattern sample_pattern(size_t n, const ProbabilityVector &p, uint64_t seed, uint64_t index);

struct Verdict {
    bool preserved = true;
    /// Independent measured logical classes as Paulis on the k reference qubits.
    GeneratorSet measured_logicals;
    /// I(A, R) in bits.
    size_t mutual_info = 0;
    /// Destroyed but some correlation with the reference remains (0 < I < 2k).
    bool classical_remnant() const {
        return !preserved && mutual_info > 0;
    }
};

/// Outcome of a k = 1 block: untouched, or which logical class got measured.
/// Values match Pauli: None = 0, X = 1, Z = 2, Y = 3.
enum class Bucket : uint8_t { None = 0, X = 1, Z = 2, Y = 3 };

const char *bucket_name(Bucket b);

/// Preservation decisions for one code.
///
/// The constructor tabulates, for every qubit and basis, the commutation
/// record of that single-qubit Pauli with each stabilizer (and gauge)
/// generator together with its pairing against the logical basis. A verdict
/// then reduces one |measured| x (|S| + 2k) matrix: rows whose commutation
/// part vanishes span M n C(S), and their pairing parts are the measured
/// logical classes.
class Monitor {
   public:
    explicit Monitor(CodeSpec code);

    const CodeSpec &code() const {
        return code_;
    }

    Verdict verdict(const MeasurementPattern &pattern) const;
    bool preserved(const MeasurementPattern &pattern) const;
    /// k = 1 stabilizer codes only. Uses a 4^n lookup table when
    /// n <= kTableMaxQubits. (A subsystem block can lose both a dressed X and
    /// a dressed Z at once, so it has no single bucket.)
    Bucket bucket(const MeasurementPattern &pattern) const;
    /// Basis of M n C(S) as physical operators.
    GeneratorSet measured_centralizer(const MeasurementPattern &pattern) const;
    bool erasure_correctable(std::span<const size_t> subset) const;
    PauliOp commuting_representative(const PauliOp &logical, const MeasurementPattern &pattern) const;
    /// Class image of a physical operator on the k reference qubits.
    PauliOp logical_image(const PauliOp &op) const;

    static constexpr size_t kTableMaxQubits = 8;

   private:
    struct Reduction {
        std::vector<BitVec> images;
        std::vector<std::vector<size_t>> combos;
    };
    Reduction reduce(const MeasurementPattern &pattern, bool gauge, bool want_combos) const;
    Bucket bucket_direct(const MeasurementPattern &pattern) const;
    const std::vector<uint8_t> &table() const;

    CodeSpec code_;
    size_t r_;
    size_t rg_;
    // rows_[q][p] for p in {X=1, Z=2, Y=3}: [comm with S | image], length r_ + 2k.
    std::vector<std::array<BitVec, 4>> rows_;
    // Same with the gauge generators in place of S (subsystem codes only).
    std::vector<std::array<BitVec, 4>> gauge_rows_;
    mutable std::once_flag table_once_;
    mutable std::vector<uint8_t> table_;
};

GeneratorSet measured_centralizer_basis(const CodeSpec &code, const MeasurementPattern &pattern);
Verdict preservation_verdict(const CodeSpec &code, const MeasurementPattern &pattern);
bool erasure_correctable(const CodeSpec &code, std::span<const size_t> subset);

/// A representative of the class of `logical` that commutes with every
/// measured single-qubit Pauli, obtained by multiplying stabilizers (gauge
/// operators as a fallback for subsystem codes).
PauliOp commuting_representative(const CodeSpec &code, const PauliOp &logical, const MeasurementPattern &pattern);

}  // namespace qmon

#endif
