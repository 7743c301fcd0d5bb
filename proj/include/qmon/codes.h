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

#ifndef QMON_CODES_H
#define QMON_CODES_H

#include <string>
#include <string_view>
#include <vector>

#include "qmon/pauli.h"

namespace qmon {

/// A stabilizer (g == 0) or subsystem (g > 0) code.
///
/// `gauge_gens` always generates G. For stabilizer codes it holds the same
/// operators as `stabilizers`. Logical operators are bare: they commute with
/// every gauge generator.
struct CodeSpec {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    size_t g = 0;
    GeneratorSet stabilizers;
    GeneratorSet gauge_gens;
    std::vector<PauliOp> logical_x;
    std::vector<PauliOp> logical_z;

    bool is_subsystem() const {
        return g > 0;
    }
};

struct LatticeSite {
    int row = 0;
    int col = 0;
    /// Edge orientation on the torus (0 horizontal, 1 vertical); 0 elsewhere.
    int orient = 0;
    bool operator==(const LatticeSite &) const = default;
};

struct LatticeGeometry {
    enum class Kind { SquareTorus, TriangularColor, Grid };
    Kind kind = Kind::Grid;
    size_t L = 0;
    /// `sites[q]` is the lattice location of qubit q.
    std::vector<LatticeSite> sites;
};

struct CodeWithGeometry {
    CodeSpec code;
    LatticeGeometry geometry;
};

CodeSpec five_qubit();
CodeSpec steane();
CodeSpec reed_muller_15();

/// Toric code on an L x L periodic square lattice, qubits on edges.
///
/// Vertex (r, c) owns two edges: h(r, c) joining (r, c)-(r, c+1) at index
/// 2(rL + c), and v(r, c) joining (r, c)-(r+1, c) at index 2(rL + c) + 1.
/// Z1 runs along horizontal edges of row 0, Z2 along vertical edges of
/// column 0; X1 and X2 are the matching dual loops. The last star and the
/// last plaquette are dropped since each family multiplies to the identity.
CodeWithGeometry toric(size_t L);
size_t toric_h(size_t L, size_t r, size_t c);
size_t toric_v(size_t L, size_t r, size_t c);
/// All L^2 star (X) and L^2 plaquette (Z) operators, dependent ones included.
std::vector<PauliOp> toric_stars(size_t L);
std::vector<PauliOp> toric_plaquettes(size_t L);

/// 6.6.6 color code with a triangular boundary and distance d.
///
/// Built on the triangular lattice points (r, c) with 0 <= c <= r <= 3(d-1)/2.
/// Points with (r + c) % 3 == 1 are faces, the rest are qubits. Each face
/// carries an X and a Z check on its neighboring qubits. The logical
/// operators run along the bottom row.
CodeWithGeometry color_triangular(size_t d);

/// L x L Bacon-Shor code, qubit (col i, row j) at index j * L + i.
///
/// Gauge generators are X_{i,j}X_{i+1,j} and Z_{i,j}Z_{i,j+1}. Stabilizers are
/// X on a pair of adjacent columns and Z on a pair of adjacent rows. The bare
/// logical X is a full column of X and the bare logical Z a full row of Z.
CodeSpec bacon_shor(size_t L);

/// Code obtained by encoding every qubit of `outer` with `inner` (k == 1).
CodeSpec concatenate(const CodeSpec &outer, const CodeSpec &inner);

/// Looks a code up by the names used in configuration files:
/// five_qubit, steane, reed_muller_15, toric, color, bacon_shor.
CodeSpec make_code(std::string_view name, size_t size = 0);

struct ValidationReport {
    bool ok = true;
    /// Name of the first violated invariant, empty when ok.
    std::string failure;
    std::string detail;
    explicit operator bool() const {
        return ok;
    }
};

ValidationReport validate(const CodeSpec &code);

std::string code_to_json(const CodeSpec &code);
CodeSpec code_from_json(std::string_view text);

}  // namespace qmon

#endif
