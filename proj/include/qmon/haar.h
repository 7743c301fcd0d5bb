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

#ifndef QMON_HAAR_H
#define QMON_HAAR_H

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qmon/codes.h"

namespace qmon {

/// Largest physical-plus-reference qubit count for dense vectors.
inline constexpr size_t kDenseMaxQubits = 14;

enum class Part : uint8_t { A, B, R };

/// Pure state on n physical qubits followed by k reference qubits. Basis
/// index bit q is qubit q, so amplitude (sys, r) sits at sys + 2^n r.
struct DenseState {
    size_t n = 0;
    size_t k = 0;
    Eigen::VectorXcd amp;
    /// Physical qubits start as B, reference qubits are R.
    std::vector<Part> labels;

    size_t n_total() const {
        return n + k;
    }
    double norm() const {
        return amp.norm();
    }
};

/// Haar-random n x 2^k isometry from QR of a complex Gaussian matrix with the
/// phases of R's diagonal divided out.
Eigen::MatrixXcd sample_haar_isometry(size_t rows, size_t cols, std::mt19937_64 &rng);

/// Choi state of a Haar-random encoding of k qubits into n.
DenseState sample_haar_code_state(size_t k, size_t n, std::mt19937_64 &rng);

/// Dense Choi state of a stabilizer code (g == 0), built by projecting onto
/// the +1 eigenspace of every Choi generator.
DenseState code_choi_dense(const CodeSpec &code);

enum class MeasureBasis { Computational, Haar };

/// Projects `measured` physical qubits onto |0...0> or onto a fresh Haar
/// state and returns the purity of the normalized reference state. Returns
/// nullopt when the projected norm vanishes (the caller should redraw).
std::optional<double> project_and_purity(const DenseState &state, std::span<const size_t> measured,
                                         MeasureBasis basis, std::mt19937_64 &rng);

/// Tr(rho^2) of the reduced state on `qubits`.
double subsystem_purity(const DenseState &state, std::span<const size_t> qubits);
/// Tr(rho_R^2) of the reference qubits.
double reference_purity(const DenseState &state);

/// E(Tr rho_R^2) / E(Tr rho_R)^2 from the two closed-form Haar averages.
double predicted_purity_exact(double dA, double dB, double dR);
/// (dR + dB) / (dR dB + 1), valid for dA >> dB >> dR.
double predicted_purity_approx(double dB, double dR);

struct PurityStats {
    double dA = 0;
    double dB = 0;
    double dR = 0;
    size_t samples = 0;
    /// Sample mean and standard deviation of Tr(rho~_R^2).
    double mean = 0;
    double std = 0;
    double predicted = 0;
    /// 1/dR + Tr(sigma_B^2) for a fixed code; NaN for Haar-random codes.
    double bound = 0;
    /// Sample mean and standard deviation of Tr(rho~_R^2) - 1/dR.
    double distance_mean = 0;
    double distance_std = 0;
    double predicted_distance = 0;
};

/// Fresh Haar code per sample, first m physical qubits measured.
PurityStats haar_code_purity(size_t k, size_t n, size_t m, size_t samples, uint64_t seed, size_t threads = 0,
                             MeasureBasis basis = MeasureBasis::Computational);

/// Haar-random projection of `measured` on a fixed stabilizer code.
PurityStats haar_measure_code(const CodeSpec &code, std::span<const size_t> measured, size_t samples,
                              uint64_t seed, size_t threads = 0);

/// {dA, dB, dR, samples, mean, std, predicted, bound, distance_mean,
/// distance_std, predicted_distance}; NaN becomes null.
std::string purity_stats_json(const PurityStats &stats);

}  // namespace qmon

#endif
