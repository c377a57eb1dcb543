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

#include <CLI11.hpp>
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qrouter/cli.hpp"
#include "qrouter/error.hpp"

namespace qrouter {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> parse_reals(const std::string &text, std::size_t expected, const std::string &flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw Error(Errc::InvalidArgument, flag + ": '" + item + "' is not a number");
        }
    }
    if (values.size() != expected) {
        throw Error(Errc::InvalidArgument,
                    flag + " expects " + std::to_string(expected) + " comma-separated numbers, got '" + text + "'");
    }
    return values;
}

ReserveSpec parse_reserve_override(const std::string &text) {
    std::stringstream ss(text);
    std::vector<std::string> parts;
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    if (parts.size() != 3 || parts[0].empty() || parts[1].empty()) {
        throw Error(Errc::InvalidArgument, "--reserve-override expects A,B,COUNT, got '" + text + "'");
    }
    long long count = -1;
    try {
        std::size_t used = 0;
        count = std::stoll(parts[2], &used);
        if (used != parts[2].size()) {
            count = -1;
        }
    } catch (const std::exception &) {
    }
    if (count < 0) {
        throw Error(Errc::InvalidArgument, "--reserve-override count must be a non-negative integer");
    }
    return {NodeId(parts[0]), NodeId(parts[1]), static_cast<std::size_t>(count)};
}

std::vector<int> parse_bsm_sequence(const std::string &text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(BsmResult(std::stoi(item)).value());
        } catch (const Error &) {
            throw;
        } catch (const std::exception &) {
            throw Error(Errc::InvalidArgument, "--find-seed-for: '" + item + "' is not a bsmResult");
        }
    }
    return values;
}

}  // namespace

RunReport make_report(const RunResult &result, std::uint64_t seed, std::size_t flow) {
    const FlowRecord &f = result.flows.at(flow);
    RunReport report;
    report.seed = seed;
    report.source = f.source;
    report.dest = f.dest;
    report.terminal_fidelity = f.terminal_fidelity;
    report.hop_count = f.hops.size();
    for (const HopRecord &h : f.hops) {
        report.ep_ids_used.push_back(h.ep_id.value);
        report.bsm_results.push_back(h.bsm_result.value());
    }
    report.hops = f.hops;
    report.terminal_state = f.terminal_state;
    report.warnings = result.warnings;
    report.trace = result.trace;
    return report;
}

std::string report_json(const RunReport &report) {
    json doc;
    doc["seed"] = report.seed;
    doc["source"] = report.source.str();
    doc["dest"] = report.dest.str();
    doc["terminal_fidelity"] = report.terminal_fidelity;
    doc["terminal_state"] = report.terminal_state;
    doc["hop_count"] = report.hop_count;
    doc["ep_ids_used"] = report.ep_ids_used;
    doc["bsm_results"] = report.bsm_results;
    doc["hops"] = json::array();
    for (const HopRecord &h : report.hops) {
        doc["hops"].push_back({{"from", h.from.str()},
                               {"to", h.to.str()},
                               {"epId", h.ep_id.value},
                               {"eprNodes", {h.epr_node_a.str(), h.epr_node_b.str()}},
                               {"bsmResult", h.bsm_result.value()}});
    }
    doc["warnings"] = report.warnings;
    doc["trace"] = json::array();
    for (const TraceEntry &e : report.trace.entries()) {
        if (e.kind == TraceKind::Protocol) {
            doc["trace"].push_back({{"node", e.node.str()}, {"line", e.line}});
        }
    }
    return doc.dump(2) + "\n";
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Teleportation-based quantum router network simulator"};
    app.name(args.empty() ? "qrouter" : args.front());

    std::string topology_path;
    std::string source;
    std::string dest;
    std::string state;
    std::string state_complex;
    bool random = false;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::vector<std::string> reserve_overrides;
    std::string find_seed_for;
    std::uint64_t search_limit = 100000;
    bool show_epm = false;

    app.add_option("--topology", topology_path, "Topology JSON file")->required();
    app.add_option("--source", source, "Node that injects the qubit")->required();
    app.add_option("--dest", dest, "Destination node")->required();
    auto *state_opt = app.add_option("--state", state, "Real amplitudes alpha,beta");
    auto *complex_opt = app.add_option("--state-complex", state_complex, "Complex amplitudes re,im,re,im");
    auto *random_opt = app.add_flag("--random-state", random, "Inject a random state");
    state_opt->excludes(complex_opt)->excludes(random_opt);
    complex_opt->excludes(random_opt);
    app.add_option("--seed", seed, "Measurement RNG seed")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "report"}))
        ->capture_default_str();
    app.add_option("--reserve-override", reserve_overrides, "Pre-created pairs per link, A,B,COUNT (repeatable)");
    app.add_option("--find-seed-for", find_seed_for,
                   "Search seeds starting at --seed for this bsmResult sequence, e.g. 0,3");
    app.add_option("--search-limit", search_limit, "Number of seeds tried by --find-seed-for")->capture_default_str();
    app.add_flag("--show-epm", show_epm, "Include EPM bookkeeping lines in the text trace");

    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) {
        argv.push_back("qrouter");
    }
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (state.empty() && state_complex.empty() && !random) {
            throw CLI::RequiredError("one of --state, --state-complex or --random-state");
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        Scenario scenario;
        scenario.network = load_network_config(topology_path);
        for (const std::string &text : reserve_overrides) {
            ReserveSpec spec = parse_reserve_override(text);
            std::erase_if(scenario.network.reserve, [&](const ReserveSpec &r) {
                return (r.a == spec.a && r.b == spec.b) || (r.a == spec.b && r.b == spec.a);
            });
            scenario.network.reserve.push_back(std::move(spec));
        }

        Injection injection{NodeId(source), RandomState{}, NodeId(dest)};
        if (!state.empty()) {
            const auto v = parse_reals(state, 2, "--state");
            injection.state = StateVector{{v[0], 0.0}, {v[1], 0.0}};
        } else if (!state_complex.empty()) {
            const auto v = parse_reals(state_complex, 4, "--state-complex");
            injection.state = StateVector{{v[0], v[1]}, {v[2], v[3]}};
        }
        scenario.injections.push_back(std::move(injection));
        scenario.seed = seed;

        if (!find_seed_for.empty()) {
            const auto wanted = parse_bsm_sequence(find_seed_for);
            const auto found = find_seed(scenario, wanted, seed, search_limit);
            if (!found) {
                err << "error: no seed in [" << seed << ", " << seed + search_limit << ") yields bsmResults "
                    << find_seed_for << "\n";
                return 1;
            }
            err << "seed: " << *found << "\n";
            scenario.seed = *found;
        }

        const RunResult result = run(scenario);
        for (const std::string &w : result.warnings) {
            err << "warning: " << w << "\n";
        }
        if (format == "report") {
            out << report_json(make_report(result, scenario.seed));
        } else {
            out << result.trace.render(show_epm);
        }
    } catch (const Error &e) {
        err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qrouter
