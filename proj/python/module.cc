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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmon/choi.h"
#include "qmon/concat.h"
#include "qmon/errors.h"
#include "qmon/experiment.h"
#include "qmon/haar.h"
#include "qmon/toric_y.h"

namespace py = pybind11;
using namespace qmon;

namespace {

std::vector<std::string> op_strings(const std::vector<PauliOp> &ops) {
    std::vector<std::string> out;
    for (const auto &op : ops) {
        out.push_back(op.str());
    }
    return out;
}

std::string run_config(const std::string &json_text, const std::string &format) {
    auto cfg = parse_config(json_text);
    auto table = run_experiment(cfg);
    return format == "json" ? to_json(table, cfg) : to_csv(table);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Preservation of encoded information under single-qubit Pauli measurements";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation", PyExc_RuntimeError);
    py::register_exception<UndefinedInput>(m, "UndefinedInput", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<CodeSpec>(m, "Code")
        .def_readonly("name", &CodeSpec::name)
        .def_readonly("n", &CodeSpec::n)
        .def_readonly("k", &CodeSpec::k)
        .def_readonly("g", &CodeSpec::g)
        .def_property_readonly("is_subsystem", &CodeSpec::is_subsystem)
        .def_property_readonly("stabilizers", [](const CodeSpec &c) { return op_strings(c.stabilizers.gens); })
        .def_property_readonly("gauge", [](const CodeSpec &c) { return op_strings(c.gauge_gens.gens); })
        .def_property_readonly("logical_x", [](const CodeSpec &c) { return op_strings(c.logical_x); })
        .def_property_readonly("logical_z", [](const CodeSpec &c) { return op_strings(c.logical_z); })
        .def("to_json", [](const CodeSpec &c) { return code_to_json(c); })
        .def("__repr__", [](const CodeSpec &c) {
            return "<Code " + c.name + " n=" + std::to_string(c.n) + " k=" + std::to_string(c.k) + ">";
        });

    m.def("make_code", &make_code, py::arg("name"), py::arg("size") = 0,
          "Library code by name: five_qubit, steane, reed_muller_15, toric, color, bacon_shor.");
    m.def("code_from_json", &code_from_json, py::arg("text"));
    m.def(
        "validate",
        [](const CodeSpec &c) {
            auto r = validate(c);
            return py::make_tuple(r.ok, r.failure, r.detail);
        },
        py::arg("code"), "Returns (ok, failure, detail).");

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("preserved", &Verdict::preserved)
        .def_readonly("mutual_info", &Verdict::mutual_info)
        .def_property_readonly("measured_logicals",
                               [](const Verdict &v) { return op_strings(v.measured_logicals.gens); })
        .def_property_readonly("classical_remnant", &Verdict::classical_remnant);

    py::class_<Monitor>(m, "Monitor")
        .def(py::init<CodeSpec>(), py::arg("code"))
        .def_property_readonly("code", &Monitor::code)
        .def(
            "verdict", [](const Monitor &mon, const std::string &p) { return mon.verdict(MeasurementPattern::from_string(p)); },
            py::arg("pattern"), "Pattern is a string over {., X, Y, Z}, one letter per qubit.")
        .def(
            "preserved",
            [](const Monitor &mon, const std::string &p) { return mon.preserved(MeasurementPattern::from_string(p)); },
            py::arg("pattern"))
        .def(
            "bucket",
            [](const Monitor &mon, const std::string &p) {
                return std::string(bucket_name(mon.bucket(MeasurementPattern::from_string(p))));
            },
            py::arg("pattern"))
        .def(
            "erasure_correctable",
            [](const Monitor &mon, const std::vector<size_t> &subset) { return mon.erasure_correctable(subset); },
            py::arg("subset"));

    m.def(
        "choi_preserved",
        [](const CodeSpec &c, const std::string &p) { return choi_preserved(c, MeasurementPattern::from_string(p)); },
        py::arg("code"), py::arg("pattern"), "Preservation decided through the Choi state (reference route).");

    m.def(
        "level_map",
        [](const Monitor &mon, double pX, double pY, double pZ) {
            auto d = level_map_exhaustive(mon, OutcomeDistribution{1 - pX - pY - pZ, pX, pY, pZ});
            return py::make_tuple(d.p_none, d.pX, d.pY, d.pZ);
        },
        py::arg("monitor"), py::arg("pX"), py::arg("pY"), py::arg("pZ"),
        "One exact concatenation step: returns (p_none, pX, pY, pZ).");
    m.def(
        "flow",
        [](const Monitor &mon, double pX, double pY, double pZ, size_t rounds, bool exhaustive, size_t samples,
           uint64_t seed, size_t threads) {
            auto t = flow(mon, OutcomeDistribution{1 - pX - pY - pZ, pX, pY, pZ}, rounds,
                          exhaustive ? FlowMethod::Exhaustive : FlowMethod::MonteCarlo, samples, seed, 0, threads);
            std::vector<std::tuple<double, double, double, double>> out;
            for (const auto &d : t.rounds) {
                out.emplace_back(d.p_none, d.pX, d.pY, d.pZ);
            }
            return out;
        },
        py::arg("monitor"), py::arg("pX"), py::arg("pY"), py::arg("pZ"), py::arg("rounds"),
        py::arg("exhaustive") = true, py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("threads") = 0);

    m.def("y_commutant_dimension", &y_commutant_dimension, py::arg("L"));
    m.def("y_line_rank", &y_line_rank, py::arg("L"));
    m.def(
        "y_destroy_upper_bound",
        [](size_t L, double pY, bool logical_only) {
            return y_destroy_upper_bound(L, pY, logical_only ? YBoundTerms::LogicalOnly : YBoundTerms::AllClasses);
        },
        py::arg("L"), py::arg("pY"), py::arg("logical_only") = false);
    m.def(
        "y_classify",
        [](size_t L, const std::string &p) { return y_classify_measured(L, MeasurementPattern::from_string(p)).label; },
        py::arg("L"), py::arg("pattern"), "Measured-class label for a Y-only pattern on toric(L).");

    m.def("predicted_purity_exact", &predicted_purity_exact, py::arg("dA"), py::arg("dB"), py::arg("dR"));
    m.def("predicted_purity_approx", &predicted_purity_approx, py::arg("dB"), py::arg("dR"));
    m.def(
        "haar_code_purity",
        [](size_t k, size_t n, size_t mm, size_t samples, uint64_t seed, size_t threads) {
            return purity_stats_json(haar_code_purity(k, n, mm, samples, seed, threads));
        },
        py::arg("k"), py::arg("n"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0, py::arg("threads") = 0,
        "PurityStats as a JSON string.");

    m.def("run_config", &run_config, py::arg("config_json"), py::arg("format") = "csv",
          "Runs an experiment config and returns the table as CSV or JSON text.");
}
