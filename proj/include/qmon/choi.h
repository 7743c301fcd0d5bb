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

#ifndef QMON_CHOI_H
#define QMON_CHOI_H

#include <span>
#include <utility>
#include <vector>

#include "qmon/codes.h"
#include "qmon/monitor.h"

namespace qmon {

enum class Region : uint8_t { A, R, RGauge, RBare };

/// Unsigned stabilizer group on system plus reference qubits.
struct StabilizerState {
    size_t n_total = 0;
    GeneratorSet group;
    std::vector<Region> labels;

    bool is_pure() const {
        return group.size() == n_total;
    }
    std::vector<size_t> region(Region r) const;
};

/// g pairs (X_i, Z_i) of gauge operators in G with X_i, Z_i anticommuting
/// and every other pair commuting, found by symplectic Gram-Schmidt.
std::vector<std::pair<PauliOp, PauliOp>> gauge_qubit_pairs(const CodeSpec &code);

/// Choi state of a stabilizer code on n + k qubits: S (x) I, Xbar_j (x) X_j,
/// Zbar_j (x) Z_j. Qubits [0, n) are A, [n, n + k) are R.
StabilizerState build_choi(const CodeSpec &code);

/// Choi state of a subsystem code on n + g + k qubits: S (x) I (x) I, gauge
/// pairs entangled with R_gauge, bare logical pairs with R_bare.
StabilizerState build_choi_subsystem(const CodeSpec &code);

/// Group update <S n C(M), M>, generators filtered greedily in order.
StabilizerState apply_measurements(const StabilizerState &state, const GeneratorSet &measured);
/// Same update, one measured operator at a time.
StabilizerState apply_measurements_sequential(const StabilizerState &state, const GeneratorSet &measured);
/// Measures the pattern's single-qubit Paulis on the A qubits.
StabilizerState apply_pattern(const StabilizerState &state, const MeasurementPattern &pattern);

/// |region| - log2 |<group> n P_region|, in bits.
size_t region_entropy(const StabilizerState &state, std::span<const size_t> region);
size_t mutual_information(const StabilizerState &state, std::span<const size_t> a, std::span<const size_t> b);

/// Whether every group element supported on R_gauge u R_bare acts trivially
/// on R_bare.
bool subsystem_preserved(const StabilizerState &state);

/// Preservation decided through the Choi state: I(A, R) = 2k for stabilizer
/// codes, the R_bare support test for subsystem codes.
bool choi_preserved(const CodeSpec &code, const MeasurementPattern &pattern);
/// I(A, R) (stabilizer) or I(A, R_bare) (subsystem) after measuring `pattern`.
size_t choi_mutual_information(const CodeSpec &code, const MeasurementPattern &pattern);

/// Whether two generator lists span the same unsigned group.
bool same_group(const GeneratorSet &a, const GeneratorSet &b);

}  // namespace qmon

#endif
