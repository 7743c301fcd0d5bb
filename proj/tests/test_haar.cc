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

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qmon/choi.h"
#include "qmon/errors.h"
#include "qmon/haar.h"
#include "qmon/rng.h"

using namespace qmon;

namespace {

std::vector<size_t> range(size_t lo, size_t hi) {
    std::vector<size_t> out;
    for (size_t i = lo; i < hi; i++) {
        out.push_back(i);
    }
    return out;
}

// Expectation of a Pauli string (qubit 0 first) in a dense state.
std::complex<double> expectation(const DenseState &s, const PauliOp &p) {
    using cplx = std::complex<double>;
    size_t dim = size_t(s.amp.size());
    cplx total = 0;
    for (size_t j = 0; j < dim; j++) {
        // Apply the single-qubit matrices one qubit at a time to |j>.
        size_t out = j;
        cplx amp = 1;
        for (size_t q = 0; q < p.num_qubits(); q++) {
            bool bit = (j >> q) & 1;
            switch (p.at(q)) {
                case Pauli::I:
                    break;
                case Pauli::X:
                    out ^= size_t{1} << q;
                    break;
                case Pauli::Z:
                    amp *= bit ? -1.0 : 1.0;
                    break;
                case Pauli::Y:
                    out ^= size_t{1} << q;
                    amp *= bit ? cplx(0, -1) : cplx(0, 1);
                    break;
            }
        }
        total += std::conj(s.amp[Eigen::Index(out)]) * amp * s.amp[Eigen::Index(j)];
    }
    return total;
}

}  // namespace

TEST_CASE("sample_haar_isometry: orthonormal columns") {
    std::mt19937_64 rng(3);
    auto v = sample_haar_isometry(64, 4, rng);
    Eigen::MatrixXcd gram = v.adjoint() * v;
    CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("sample_haar_isometry: first moment is isotropic") {
    // E |<0|V|0>|^2 = 1/d for a Haar column.
    double acc = 0;
    size_t draws = 4000;
    for (uint64_t i = 0; i < draws; i++) {
        auto rng = stream_rng(5, 0, i);
        auto v = sample_haar_isometry(8, 1, rng);
        acc += std::norm(v(0, 0));
    }
    double mean = acc / double(draws);
    // Var |v0|^2 = (d-1)/(d^2 (d+1)) for d = 8.
    double sigma = std::sqrt(7.0 / (64.0 * 9.0) / double(draws));
    CHECK(std::abs(mean - 1.0 / 8) < 4 * sigma);
}

TEST_CASE("sample_haar_code_state: examples") {
    std::mt19937_64 rng(1);
    auto s = sample_haar_code_state(1, 6, rng);
    CHECK(s.n_total() == 7);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reference_purity(s) == doctest::Approx(0.5).epsilon(1e-10));

    auto s2 = sample_haar_code_state(2, 8, rng);
    CHECK(reference_purity(s2) == doctest::Approx(0.25).epsilon(1e-10));

    std::mt19937_64 a(10), b(11);
    auto sa = sample_haar_code_state(1, 5, a);
    auto sb = sample_haar_code_state(1, 5, b);
    double fidelity = std::norm(sa.amp.dot(sb.amp));
    CHECK(fidelity < 1 - 1e-6);

    CHECK_THROWS_AS(sample_haar_code_state(2, 2, rng), ContractViolation);
    CHECK_THROWS_AS(sample_haar_code_state(1, 14, rng), UnsupportedOperation);
}

TEST_CASE("code_choi_dense: stabilized by every Choi generator") {
    for (const auto &code : {five_qubit(), steane(), toric(2).code}) {
        auto s = code_choi_dense(code);
        CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto &g : build_choi(code).group.gens) {
            // Hermitian form i^{|x & z|} X^x Z^z matches the Y = iXZ convention
            // used by expectation(), so every generator has eigenvalue +1.
            CHECK(std::abs(expectation(s, g) - 1.0) < 1e-10);
        }
        CHECK(reference_purity(s) == doctest::Approx(std::ldexp(1.0, -int(code.k))).epsilon(1e-10));
    }
    CHECK_THROWS_AS(code_choi_dense(bacon_shor(2)), UnsupportedOperation);
}

TEST_CASE("subsystem_purity agrees with stabilizer entropies") {
    for (const auto &code : {five_qubit(), steane()}) {
        auto dense = code_choi_dense(code);
        auto choi = build_choi(code);
        for (size_t lo = 0; lo < code.n; lo++) {
            for (size_t hi = lo + 1; hi <= code.n + code.k; hi++) {
                auto region = range(lo, hi);
                double want = std::ldexp(1.0, -int(region_entropy(choi, region)));
                CHECK(subsystem_purity(dense, region) == doctest::Approx(want).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("project_and_purity: examples") {
    std::mt19937_64 rng(2);
    auto s = sample_haar_code_state(1, 8, rng);
    std::vector<size_t> none;
    CHECK(*project_and_purity(s, none, MeasureBasis::Computational, rng) == doctest::Approx(0.5).epsilon(1e-10));
    for (size_t m = 1; m <= 8; m++) {
        auto meas = range(0, m);
        for (auto basis : {MeasureBasis::Computational, MeasureBasis::Haar}) {
            auto p = project_and_purity(s, meas, basis, rng);
            REQUIRE(p.has_value());
            CHECK(*p >= 0.5 - 1e-12);
            CHECK(*p <= 1 + 1e-12);
        }
    }
    // Measuring all physical qubits leaves R pure.
    CHECK(*project_and_purity(s, range(0, 8), MeasureBasis::Computational, rng) ==
          doctest::Approx(1.0).epsilon(1e-10));

    std::vector<size_t> bad = {9};
    CHECK_THROWS_AS(project_and_purity(s, bad, MeasureBasis::Haar, rng), ContractViolation);
}

TEST_CASE("project_and_purity: vanishing projection") {
    // |Phi+> on (physical, reference); n = 1, k = 1. Computational projection of
    // the physical qubit onto |0> never vanishes, but a state with amplitude
    // only on |1> does.
    DenseState s;
    s.n = 2;
    s.k = 1;
    s.amp = Eigen::VectorXcd::Zero(8);
    s.amp[3] = 1 / std::sqrt(2.0);
    s.amp[7] = 1 / std::sqrt(2.0);
    std::mt19937_64 rng(0);
    std::vector<size_t> meas = {0};
    CHECK_FALSE(project_and_purity(s, meas, MeasureBasis::Computational, rng).has_value());
}

TEST_CASE("predicted_purity_exact") {
    CHECK(predicted_purity_exact(64, 16, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(predicted_purity_exact(1 << 20, 1 << 16, 2) == doctest::Approx(0.5).epsilon(1e-4));
    // Gaussian regime dA >> dB >> dR.
    CHECK(predicted_purity_exact(1 << 20, 64, 2) == doctest::Approx(predicted_purity_approx(64, 2)).epsilon(1e-5));
    CHECK(predicted_purity_approx(64, 2) == doctest::Approx(66.0 / 129.0));
    double v = predicted_purity_exact(64, 16, 2);
    CHECK(v > 0.5);
    CHECK(v < 1);
    CHECK_THROWS_AS(predicted_purity_exact(0, 2, 2), ContractViolation);
}

TEST_CASE("haar_code_purity: sample means track the closed form") {
    for (size_t m : {4, 6, 8}) {
        auto s = haar_code_purity(1, 10, m, 200, 1);
        double se = s.std / std::sqrt(double(s.samples));
        CHECK(std::abs(s.mean - s.predicted) <= 3 * se);
        CHECK(s.dA * s.dB == 1024);
        CHECK(std::isnan(s.bound));
    }
    auto a = haar_code_purity(1, 8, 4, 40, 9, 1);
    auto b = haar_code_purity(1, 8, 4, 40, 9, 3);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);
    CHECK(purity_stats_json(a) == purity_stats_json(b));
}

TEST_CASE("haar_measure_code: examples") {
    auto code = five_qubit();
    std::vector<size_t> three = {0, 1, 2};
    auto s = haar_measure_code(code, three, 200, 4);
    // Any two qubits of the five-qubit code are maximally mixed.
    CHECK(s.bound == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(s.mean <= s.bound + 3 * s.std / std::sqrt(200.0));

    std::vector<size_t> none;
    auto e = haar_measure_code(code, none, 10, 4);
    CHECK(e.mean == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.std < 1e-10);

    // Two qubits are correctable, so B = the other three holds R's partner and
    // the Haar projection cannot disturb rho_R.
    std::vector<size_t> two = {0, 3};
    auto c = haar_measure_code(code, two, 50, 5);
    CHECK(c.mean == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(c.std < 1e-10);
}

TEST_CASE("purity_stats_json") {
    PurityStats s;
    s.dA = 4;
    s.dB = 2;
    s.dR = 2;
    s.samples = 3;
    s.mean = 0.5;
    s.bound = std::nan("");
    auto j = purity_stats_json(s);
    CHECK(j.find("\"bound\": null") != std::string::npos);
    CHECK(j.find("\"dA\": 4.0") != std::string::npos);
}
