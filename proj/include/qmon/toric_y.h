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

#ifndef QMON_TORIC_Y_H
#define QMON_TORIC_Y_H

#include <string>
#include <vector>

#include "qmon/monitor.h"

namespace qmon {

// Y-type operators on toric(L) that commute with every star and plaquette.
//
// In 45-degree rotated coordinates each edge gets a cell (a, b):
//   h(r, c) -> a = (c - r) mod L,     b = (c + r) mod L
//   v(r, c) -> a = (c - r - 1) mod L, b = (c + r) mod L
// Every cell holds exactly two edges. A star or plaquette touches two edges
// of each line it meets, so the all-Y operator on one a-line or one b-line
// commutes with all checks. The lines span 2L - 1 dimensions; the full
// Y-commutant has dimension 2L. The missing element E holds exactly one edge
// of every cell (for odd L, Y on every horizontal edge works), so every
// element of the coset E * (line span) has weight L^2.

size_t toric_line_a(size_t L, size_t edge);
size_t toric_line_b(size_t L, size_t edge);

struct YCommutantBasis {
    size_t L = 0;
    /// All 2L line operators: a-lines 0..L-1, then b-lines 0..L-1.
    std::vector<PauliOp> lines;
    /// Independent subset of `lines` (2L - 1 operators).
    GeneratorSet generators;
    /// A Y-commutant element outside the line span, one edge per cell.
    PauliOp extra;
};

YCommutantBasis y_commutant_basis(size_t L);

/// Dimension of the space of all-Y operators commuting with every check,
/// from a nullspace of the check-support matrix (independent of the lines).
size_t y_commutant_dimension(size_t L);
/// Rank of the 2L line operators.
size_t y_line_rank(size_t L);

/// Y on every edge whose a-line is in `a_lines` xor whose b-line is in `b_lines`.
PauliOp y_line_product(size_t L, const std::vector<size_t> &a_lines, const std::vector<size_t> &b_lines);

/// Number of rotated cells covered by a product of `a` a-lines and `b`
/// b-lines: (L - a) b + (L - b) a. The operator weight on toric(L) is twice this.
size_t y_weight(size_t L, size_t a, size_t b);

enum class YBoundTerms {
    /// Sum over line choices (a, b) of C(L,a) C(L,b) pY^(2 W(a, b)), skipping
    /// the two identity choices.
    AllClasses,
    /// Union over the distinct elements of the full Y-commutant that act as
    /// nontrivial logical operators, each counted once.
    LogicalOnly,
};

/// Union bound on the probability that pure-Y measurement at rate pY exposes
/// a logical operator of toric(L): sum over line products of pY^weight.
double y_destroy_upper_bound(size_t L, double pY, YBoundTerms terms = YBoundTerms::AllClasses);

struct YClassification {
    bool preserved = true;
    GeneratorSet measured_logicals;
    /// Canonical label such as "Y1,Y2" or "X1X2,Z1Z2"; "none" when preserved.
    std::string label;
};

/// Verdict on a pattern that measures only Y (or nothing) on each qubit.
YClassification y_classify_measured(const Monitor &toric_monitor, const MeasurementPattern &pattern);
YClassification y_classify_measured(size_t L, const MeasurementPattern &pattern);

/// Canonical label of a measured logical subgroup on k qubits: nonidentity
/// elements ordered by weight, then by letters with X < Z < Y, then the
/// first independent ones joined by commas. Qubits are 1-based.
std::string logical_set_label(const GeneratorSet &measured_logicals);

}  // namespace qmon

#endif
