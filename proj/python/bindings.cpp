// Copyright 2026 The qrouter Authors
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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "qrouter/cli.hpp"
#include "qrouter/error.hpp"
#include "qrouter/netsim.hpp"
#include "qrouter/routing.hpp"
#include "qrouter/teleport.hpp"

namespace py = pybind11;
using namespace qrouter;

namespace {

std::vector<QubitId> ids(const std::vector<std::uint64_t> &raw) {
    std::vector<QubitId> out;
    out.reserve(raw.size());
    for (std::uint64_t v : raw) out.push_back(QubitId{v});
    return out;
}

py::list terms_to_py(const std::vector<BasisTerm> &terms) {
    py::list out;
    for (const BasisTerm &t : terms) out.append(py::make_tuple(t.label, t.amplitude));
    return out;
}

std::optional<BsmResult> to_bsm(std::optional<int> forced) {
    if (!forced) return std::nullopt;
    return BsmResult(*forced);
}

Scenario make_scenario(const std::string &config_json, const std::string &source, const std::string &dest,
                       std::optional<std::pair<Amplitude, Amplitude>> state, std::uint64_t seed) {
    Scenario sc;
    sc.network = parse_network_config(config_json);
    if (state) {
        sc.injections.push_back({NodeId(source), StateVector{state->first, state->second}, NodeId(dest)});
    } else {
        sc.injections.push_back({NodeId(source), RandomState{}, NodeId(dest)});
    }
    sc.seed = seed;
    return sc;
}

Topology make_topology(const std::vector<std::string> &nodes,
                       const std::vector<std::tuple<std::string, std::string, std::int64_t>> &links) {
    Topology t;
    for (const auto &n : nodes) t.nodes.push_back(NodeId(n));
    for (const auto &[a, b, m] : links) t.links.push_back({NodeId(a), NodeId(b), m});
    return t;
}

}  // namespace

PYBIND11_MODULE(_qrouter, m) {
    m.doc() = "Entanglement-based quantum routing simulator";

    m.attr("QrouterError") = py::reinterpret_steal<py::object>(
        PyErr_NewException("qrouter._qrouter.QrouterError", PyExc_RuntimeError, nullptr));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error &e) {
            py::object type = py::module_::import("qrouter._qrouter").attr("QrouterError");
            py::object exc = type(e.what());
            exc.attr("code") = std::string(errc_name(e.code()));
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    py::class_<QuantumRegister>(m, "QuantumRegister")
        .def(py::init<std::uint64_t>(), py::arg("seed") = 0)
        .def("alloc_qubit", [](QuantumRegister &r, Amplitude a, Amplitude b) { return r.alloc_qubit(a, b).value; },
             py::arg("alpha"), py::arg("beta"))
        .def("h", [](QuantumRegister &r, std::uint64_t q) { r.apply_h(QubitId{q}); })
        .def("x", [](QuantumRegister &r, std::uint64_t q) { r.apply_x(QubitId{q}); })
        .def("z", [](QuantumRegister &r, std::uint64_t q) { r.apply_z(QubitId{q}); })
        .def("cnot", [](QuantumRegister &r, std::uint64_t c, std::uint64_t t) { r.apply_cnot(QubitId{c}, QubitId{t}); },
             py::arg("control"), py::arg("target"))
        .def("measure", [](QuantumRegister &r, std::uint64_t q) { return r.measure(QubitId{q}); })
        .def("probability_one", [](const QuantumRegister &r, std::uint64_t q) { return r.probability_one(QubitId{q}); })
        .def("release", [](QuantumRegister &r, std::uint64_t q) { r.release(QubitId{q}); })
        .def("peek", [](const QuantumRegister &r, const std::vector<std::uint64_t> &qs) {
            return terms_to_py(r.peek_joint_state(ids(qs)));
        })
        .def("peek_str", [](const QuantumRegister &r, const std::vector<std::uint64_t> &qs) {
            return format_state(r.peek_joint_state(ids(qs)));
        })
        .def("fidelity", [](const QuantumRegister &r, std::uint64_t q, Amplitude a, Amplitude b) {
            return r.fidelity(QubitId{q}, a, b);
        })
        .def("is_live", [](const QuantumRegister &r, std::uint64_t q) { return r.is_live(QubitId{q}); })
        .def_property_readonly("num_qubits", &QuantumRegister::num_qubits)
        .def_property_readonly("op_count", &QuantumRegister::op_count)
        .def("norm_squared", &QuantumRegister::norm_squared);

    m.def("make_bell_pair", [](QuantumRegister &r) {
        auto [a, b] = make_bell_pair(r);
        return py::make_tuple(a.value, b.value);
    });
    m.def(
        "bell_state_measurement",
        [](QuantumRegister &r, std::uint64_t source, std::uint64_t half, std::optional<int> forced) {
            return bell_state_measurement(r, QubitId{source}, QubitId{half}, to_bsm(forced)).value();
        },
        py::arg("reg"), py::arg("source"), py::arg("epr_half"), py::arg("forced") = py::none());
    m.def("quantum_state_recovery", [](QuantumRegister &r, std::uint64_t q, int bsm) {
        quantum_state_recovery(r, QubitId{q}, BsmResult(bsm));
    });
    m.def(
        "teleport",
        [](QuantumRegister &r, std::uint64_t source, std::uint64_t near, std::uint64_t far, std::optional<int> forced) {
            return teleport(r, QubitId{source}, QubitId{near}, QubitId{far}, to_bsm(forced)).value();
        },
        py::arg("reg"), py::arg("source"), py::arg("near"), py::arg("far"), py::arg("forced") = py::none());

    m.def(
        "build_tables",
        [](const std::vector<std::string> &nodes,
           const std::vector<std::tuple<std::string, std::string, std::int64_t>> &links) {
            const TableBuild built = build_tables(make_topology(nodes, links));
            py::dict tables;
            for (const auto &[owner, table] : built.tables) {
                py::list entries;
                for (const ForwardingEntry &e : table.entries())
                    entries.append(py::make_tuple(e.destination.str(), e.interface.str(), e.metric));
                tables[py::str(owner.str())] = entries;
            }
            return py::make_tuple(tables, built.warnings);
        },
        py::arg("nodes"), py::arg("links"));
    m.def(
        "next_hop",
        [](const std::vector<std::string> &nodes,
           const std::vector<std::tuple<std::string, std::string, std::int64_t>> &links, const std::string &at,
           const std::string &dest) {
            const TableBuild built = build_tables(make_topology(nodes, links));
            const auto it = built.tables.find(NodeId(at));
            if (it == built.tables.end()) throw Error(Errc::UnknownNode, "unknown node '" + at + "'");
            return next_hop(it->second, NodeId(dest)).str();
        },
        py::arg("nodes"), py::arg("links"), py::arg("at"), py::arg("dest"));

    m.def("validate_config", [](const std::string &text) { return serialize_network_config(parse_network_config(text)); });
    m.def(
        "simulate",
        [](const std::string &config_json, const std::string &source, const std::string &dest,
           std::optional<std::pair<Amplitude, Amplitude>> state, std::uint64_t seed) {
            const Scenario sc = make_scenario(config_json, source, dest, state, seed);
            const RunResult result = run(sc);
            return report_json(make_report(result, seed));
        },
        py::arg("config"), py::arg("source"), py::arg("dest"), py::arg("state") = py::none(), py::arg("seed") = 0);
    m.def(
        "trace",
        [](const std::string &config_json, const std::string &source, const std::string &dest,
           std::optional<std::pair<Amplitude, Amplitude>> state, std::uint64_t seed, bool show_epm) {
            return run(make_scenario(config_json, source, dest, state, seed)).trace.render(show_epm);
        },
        py::arg("config"), py::arg("source"), py::arg("dest"), py::arg("state") = py::none(), py::arg("seed") = 0,
        py::arg("show_epm") = false);
    m.def(
        "find_seed",
        [](const std::string &config_json, const std::string &source, const std::string &dest,
           std::optional<std::pair<Amplitude, Amplitude>> state, const std::vector<int> &wanted, std::uint64_t first,
           std::uint64_t count) {
            return find_seed(make_scenario(config_json, source, dest, state, 0), wanted, first, count);
        },
        py::arg("config"), py::arg("source"), py::arg("dest"), py::arg("state"), py::arg("wanted"),
        py::arg("first") = 0, py::arg("count") = 100000);
    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "qrouter");
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
