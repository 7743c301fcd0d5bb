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

#include "qmon/haar.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "json.hpp"
#include "qmon/choi.h"
#include "qmon/errors.h"
#include "qmon/parallel.h"
#include "qmon/rng.h"

namespace qmon {

namespace {

using cplx = std::complex<double>;

// Stream ids for per-sample generators.
constexpr uint64_t kStreamHaarCode = 0x4843;
constexpr uint64_t kStreamHaarMeasure = 0x484d;
constexpr size_t kMaxRedraws = 16;

cplx gaussian(std::normal_distribution<double> &g, std::mt19937_64 &rng) {
    double re = g(rng);
    double im = g(rng);
    return {re, im};
}

Eigen::VectorXcd haar_vector(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (size_t i = 0; i < dim; i++) {
        v[Eigen::Index(i)] = gaussian(g, rng);
    }
    return v / v.norm();
}

// State as a (kept dims) x (traced dims) matrix, `kept` listing qubits.
Eigen::MatrixXcd split(const DenseState &state, std::span<const size_t> kept) {
    size_t nt = state.n_total();
    std::vector<bool> is_kept(nt);
    for (size_t q : kept) {
        if (q >= nt || is_kept[q]) {
            throw ContractViolation("subsystem qubits must be distinct and in range");
        }
        is_kept[q] = true;
    }
    std::vector<size_t> rest;
    for (size_t q = 0; q < nt; q++) {
        if (!is_kept[q]) {
            rest.push_back(q);
        }
    }
    Eigen::MatrixXcd m(Eigen::Index(1) << kept.size(), Eigen::Index(1) << rest.size());
    for (size_t idx = 0; idx < (size_t{1} << nt); idx++) {
        size_t row = 0, col = 0;
        for (size_t i = 0; i < kept.size(); i++) {
            row |= ((idx >> kept[i]) & 1) << i;
        }
        for (size_t i = 0; i < rest.size(); i++) {
            col |= ((idx >> rest[i]) & 1) << i;
        }
        m(Eigen::Index(row), Eigen::Index(col)) = state.amp[Eigen::Index(idx)];
    }
    return m;
}

void check_measured(const DenseState &state, std::span<const size_t> measured) {
    std::vector<bool> seen(state.n);
    for (size_t q : measured) {
        if (q >= state.n || seen[q]) {
            throw ContractViolation("measured qubits must be distinct physical qubits");
        }
        seen[q] = true;
    }
}

struct SampleSummary {
    double mean = 0;
    double std = 0;
};

SampleSummary summarize(const std::vector<double> &xs) {
    SampleSummary s;
    for (double x : xs) {
        s.mean += x;
    }
    s.mean /= double(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.std = std::sqrt(ss / double(xs.size() - 1));
    }
    return s;
}

void fill_stats(PurityStats &stats, const std::vector<double> &purities) {
    auto p = summarize(purities);
    std::vector<double> dist(purities.size());
    for (size_t i = 0; i < purities.size(); i++) {
        dist[i] = purities[i] - 1 / stats.dR;
    }
    auto d = summarize(dist);
    stats.samples = purities.size();
    stats.mean = p.mean;
    stats.std = p.std;
    stats.distance_mean = d.mean;
    stats.distance_std = d.std;
}

double purity_with_redraws(const DenseState &state, std::span<const size_t> measured, MeasureBasis basis,
                           std::mt19937_64 &rng) {
    for (size_t t = 0; t < kMaxRedraws; t++) {
        if (auto p = project_and_purity(state, measured, basis, rng)) {
            return *p;
        }
    }
    throw UndefinedInput("projection vanished on every redraw");
}

}  // namespace

Eigen::MatrixXcd sample_haar_isometry(size_t rows, size_t cols, std::mt19937_64 &rng) {
    if (cols > rows) {
        throw ContractViolation("sample_haar_isometry: more columns than rows");
    }
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        for (Eigen::Index r = 0; r < m.rows(); r++) {
            m(r, c) = gaussian(g, rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd r = qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        cplx d = r(c, c);
        double a = std::abs(d);
        if (a > 0) {
            q.col(c) *= d / a;
        }
    }
    return q;
}

DenseState sample_haar_code_state(size_t k, size_t n, std::mt19937_64 &rng) {
    if (k >= n) {
        throw ContractViolation("sample_haar_code_state: need k < n");
    }
    if (n + k > kDenseMaxQubits) {
        throw UnsupportedOperation("sample_haar_code_state: n + k exceeds " + std::to_string(kDenseMaxQubits));
    }
    Eigen::MatrixXcd v = sample_haar_isometry(size_t{1} << n, size_t{1} << k, rng);
    DenseState s;
    s.n = n;
    s.k = k;
    s.labels.assign(n, Part::B);
    s.labels.resize(n + k, Part::R);
    // Reshaping column-major V (2^n x 2^k) gives index sys + 2^n r directly.
    s.amp = Eigen::Map<Eigen::VectorXcd>(v.data(), v.size()) / std::sqrt(double(size_t{1} << k));
    return s;
}

DenseState code_choi_dense(const CodeSpec &code) {
    if (code.is_subsystem()) {
        throw UnsupportedOperation("code_choi_dense: subsystem codes have a mixed Choi state");
    }
    size_t nt = code.n + code.k;
    if (nt > kDenseMaxQubits) {
        throw UnsupportedOperation("code_choi_dense: n + k exceeds " + std::to_string(kDenseMaxQubits));
    }
    auto choi = build_choi(code);
    size_t dim = size_t{1} << nt;
    std::mt19937_64 rng(0);
    Eigen::VectorXcd v = haar_vector(dim, rng);
    for (const auto &g : choi.group.gens) {
        uint32_t xm = 0, zm = 0;
        for (size_t q = 0; q < nt; q++) {
            Pauli p = g.at(q);
            xm |= uint32_t(p == Pauli::X || p == Pauli::Y) << q;
            zm |= uint32_t(p == Pauli::Z || p == Pauli::Y) << q;
        }
        // Hermitian operator i^{|x & z|} X^x Z^z.
        static const cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        cplx phase = kPhase[std::popcount(xm & zm) % 4];
        Eigen::VectorXcd gv(dim);
        for (size_t j = 0; j < dim; j++) {
            double sign = std::popcount(uint32_t(j) & zm) % 2 ? -1.0 : 1.0;
            gv[Eigen::Index(j ^ xm)] = phase * sign * v[Eigen::Index(j)];
        }
        v = 0.5 * (v + gv);
    }
    double nv = v.norm();
    if (nv < 1e-6) {
        throw std::logic_error("code_choi_dense: projection vanished");
    }
    DenseState s;
    s.n = code.n;
    s.k = code.k;
    s.labels.assign(code.n, Part::B);
    s.labels.resize(nt, Part::R);
    s.amp = v / nv;
    return s;
}

std::optional<double> project_and_purity(const DenseState &state, std::span<const size_t> measured,
                                         MeasureBasis basis, std::mt19937_64 &rng) {
    check_measured(state, measured);
    // Rows: measured qubits; columns: everything else.
    Eigen::MatrixXcd psi = split(state, measured);
    Eigen::VectorXcd bra;
    if (basis == MeasureBasis::Computational) {
        bra = Eigen::VectorXcd::Zero(psi.rows());
        bra[0] = 1;
    } else {
        bra = haar_vector(size_t(psi.rows()), rng);
    }
    Eigen::VectorXcd rest = bra.adjoint() * psi;
    double norm2 = rest.squaredNorm();
    if (norm2 < 1e-24) {
        return std::nullopt;
    }
    // Remaining qubits in increasing order: unmeasured physical, then the k
    // reference qubits on the top bits.
    size_t dr = size_t{1} << state.k;
    size_t db = size_t(rest.size()) / dr;
    Eigen::Map<Eigen::MatrixXcd> br(rest.data(), Eigen::Index(db), Eigen::Index(dr));
    Eigen::MatrixXcd rho = br.transpose() * br.conjugate();
    double tr = rho.trace().real();
    return (rho.cwiseAbs2().sum()) / (tr * tr);
}

double subsystem_purity(const DenseState &state, std::span<const size_t> qubits) {
    Eigen::MatrixXcd m = split(state, qubits);
    Eigen::MatrixXcd rho = m * m.adjoint();
    return rho.cwiseAbs2().sum();
}

double reference_purity(const DenseState &state) {
    std::vector<size_t> r;
    for (size_t q = state.n; q < state.n_total(); q++) {
        r.push_back(q);
    }
    return subsystem_purity(state, r);
}

double predicted_purity_exact(double dA, double dB, double dR) {
    if (dA < 1 || dB < 1 || dR < 1) {
        throw ContractViolation("predicted_purity_exact: dimensions must be at least 1");
    }
    long double a = dA, b = dB, r = dR;
    long double ab = a * b;
    long double num = (r * r * b + r * b * b) / (ab * ab - 1) - (r * r * b * b + r * b) / (ab * (ab * ab - 1));
    long double den = (r * r * b * b + r * b) / (ab * ab - 1) - (r * b * b + r * r * b) / (ab * (ab * ab - 1));
    return double(num / den);
}

double predicted_purity_approx(double dB, double dR) {
    return (dR + dB) / (dR * dB + 1);
}

PurityStats haar_code_purity(size_t k, size_t n, size_t m, size_t samples, uint64_t seed, size_t threads,
                             MeasureBasis basis) {
    if (m > n || samples == 0) {
        throw ContractViolation("haar_code_purity: need m <= n and samples > 0");
    }
    if (n + k > kDenseMaxQubits) {
        throw UnsupportedOperation("haar_code_purity: n + k exceeds " + std::to_string(kDenseMaxQubits));
    }
    std::vector<size_t> measured(m);
    for (size_t i = 0; i < m; i++) {
        measured[i] = i;
    }
    std::vector<double> purities(samples);
    parallel_for(samples, threads, [&](size_t i) {
        auto rng = stream_rng(seed, kStreamHaarCode, i);
        DenseState s = sample_haar_code_state(k, n, rng);
        purities[i] = purity_with_redraws(s, measured, basis, rng);
    });
    PurityStats stats;
    stats.dA = std::ldexp(1.0, int(m));
    stats.dB = std::ldexp(1.0, int(n - m));
    stats.dR = std::ldexp(1.0, int(k));
    stats.predicted = predicted_purity_exact(stats.dA, stats.dB, stats.dR);
    stats.bound = std::nan("");
    stats.predicted_distance = 1 / stats.dB;
    fill_stats(stats, purities);
    return stats;
}

PurityStats haar_measure_code(const CodeSpec &code, std::span<const size_t> measured, size_t samples,
                              uint64_t seed, size_t threads) {
    if (samples == 0) {
        throw ContractViolation("haar_measure_code: samples must be positive");
    }
    DenseState s = code_choi_dense(code);
    check_measured(s, measured);
    std::vector<bool> in_a(code.n);
    for (size_t q : measured) {
        in_a[q] = true;
    }
    std::vector<size_t> b;
    for (size_t q = 0; q < code.n; q++) {
        if (!in_a[q]) {
            b.push_back(q);
        }
    }
    std::vector<double> purities(samples);
    parallel_for(samples, threads, [&](size_t i) {
        auto rng = stream_rng(seed, kStreamHaarMeasure, i);
        purities[i] = purity_with_redraws(s, measured, MeasureBasis::Haar, rng);
    });
    PurityStats stats;
    stats.dA = std::ldexp(1.0, int(measured.size()));
    stats.dB = std::ldexp(1.0, int(b.size()));
    stats.dR = std::ldexp(1.0, int(code.k));
    double sigma_b = b.empty() ? 1.0 : subsystem_purity(s, b);
    double sigma_a = measured.empty() ? 1.0 : subsystem_purity(s, measured);
    std::vector<size_t> r;
    for (size_t q = code.n; q < s.n_total(); q++) {
        r.push_back(q);
    }
    double sigma_r = subsystem_purity(s, r);
    stats.predicted = (sigma_r + sigma_b) / (1 + sigma_a);
    stats.bound = 1 / stats.dR + sigma_b;
    stats.predicted_distance = stats.predicted - 1 / stats.dR;
    fill_stats(stats, purities);
    return stats;
}

std::string purity_stats_json(const PurityStats &stats) {
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
    nlohmann::ordered_json j;
    j["dA"] = stats.dA;
    j["dB"] = stats.dB;
    j["dR"] = stats.dR;
    j["samples"] = stats.samples;
    j["mean"] = num(stats.mean);
    j["std"] = num(stats.std);
    j["predicted"] = num(stats.predicted);
    j["bound"] = num(stats.bound);
    j["distance_mean"] = num(stats.distance_mean);
    j["distance_std"] = num(stats.distance_std);
    j["predicted_distance"] = num(stats.predicted_distance);
    return j.dump(2);
}

}  // namespace qmon
