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

#include "qrouter/netsim.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "oracle.hpp"
#include "qrouter/cli.hpp"
#include "qrouter/error.hpp"

namespace qrouter {
namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Scenario line3(std::uint64_t seed) {
    Scenario sc;
    sc.network = load_network_config(std::string(QROUTER_DATA) + "/line3.json");
    sc.injections.push_back({"Source", StateVector{0.4091, 0.9125}, "Destination"});
    sc.seed = seed;
    return sc;
}

NetworkConfig chain(std::size_t nodes) {
    NetworkConfig c;
    for (std::size_t i = 0; i < nodes; ++i) c.topology.nodes.push_back(NodeId("N" + std::to_string(i)));
    for (std::size_t i = 0; i + 1 < nodes; ++i) c.topology.links.push_back({c.topology.nodes[i], c.topology.nodes[i + 1], 1});
    return c;
}

// Random connected graph: a random spanning tree plus extra edges.
Topology random_connected(std::mt19937_64 &gen, std::size_t n) {
    Topology t;
    for (std::size_t i = 0; i < n; ++i) t.nodes.push_back(NodeId("v" + std::to_string(i)));
    std::uniform_int_distribution<int> metric(1, 10);
    for (std::size_t i = 1; i < n; ++i) {
        t.links.push_back({t.nodes[gen() % i], t.nodes[i], metric(gen)});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!t.adjacent(t.nodes[i], t.nodes[j]) && gen() % 3 == 0) t.links.push_back({t.nodes[i], t.nodes[j], metric(gen)});
    return t;
}

// Lines of a flow with the seed-dependent numbers masked out.
std::vector<std::string> masked(const std::vector<TraceEntry> &entries) {
    static const std::regex digits(R"(("epId":|"bsmResult":|epId: |bsmResult: |Pair ID: )\d+)");
    std::vector<std::string> out;
    for (const auto &e : entries) {
        if (e.kind == TraceKind::Protocol) out.push_back(e.node.str() + "|" + std::regex_replace(e.line, digits, "$1#"));
    }
    return out;
}

TEST(Simulation, LineScenarioStructure) {
    const RunResult r = run(line3(1));
    ASSERT_EQ(r.flows.size(), 1u);
    const FlowRecord &f = r.flows[0];
    EXPECT_GE(f.terminal_fidelity, 1.0 - 1e-9);
    EXPECT_EQ(f.terminal_state, "(0.4091)|0> + (0.9125)|1>");
    ASSERT_EQ(f.hops.size(), 2u);
    EXPECT_EQ(f.hops[0].ep_id.value, 0u);
    EXPECT_EQ(f.hops[1].ep_id.value, 1u);

    const std::string text = r.trace.render();
    EXPECT_EQ(text.find("Source\n"), 0u);
    EXPECT_LT(text.find("\nQIR\n"), text.find("\nDestination\n"));
    EXPECT_EQ(r.terminals.size(), 1u);
}

TEST(Simulation, GoldenTraceWithSearchedSeed) {
    const auto seed = find_seed(line3(0), {0, 3});
    ASSERT_TRUE(seed.has_value());
    const RunResult r = run(line3(*seed));
    EXPECT_EQ(r.trace.render(), read_file(std::string(QROUTER_TEST_DATA) + "/line3_golden.txt"));
}

TEST(Simulation, ZeroInjections) {
    Scenario sc = line3(0);
    sc.injections.clear();
    const RunResult r = run(sc);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_TRUE(r.terminals.empty());
    EXPECT_EQ(r.trace.render(), "");
}

TEST(Simulation, FiveHopChain) {
    Scenario sc;
    sc.network = chain(6);
    sc.injections.push_back({"N0", RandomState{}, "N5"});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        sc.seed = seed;
        const RunResult r = run(sc);
        EXPECT_EQ(r.flows[0].hops.size(), 5u);
        EXPECT_GE(r.flows[0].terminal_fidelity, 1.0 - 1e-9);
    }
}

TEST(Simulation, StepProcessesOneEventAtATime) {
    Simulation sim(load_network_config(std::string(QROUTER_DATA) + "/line3.json"), 0);
    EXPECT_FALSE(sim.step().has_value());
    sim.schedule_injection({"Source", StateVector{0.4091, 0.9125}, "Destination"});
    const auto first = sim.step();
    ASSERT_TRUE(first.has_value());
    EXPECT_EQ(first->kind, EventKind::Inject);
    EXPECT_EQ(first->seq, 0u);
    const auto &entries = sim.network().trace().entries();
    std::vector<std::string> protocol;
    for (const auto &e : entries) {
        if (e.kind == TraceKind::Protocol) {
            EXPECT_EQ(e.node, NodeId("Source"));
            protocol.push_back(e.line);
        }
    }
    ASSERT_EQ(protocol.size(), 7u);
    EXPECT_EQ(protocol.front(), "getqubit()");
    EXPECT_EQ(protocol.back().rfind("forward(", 0), 0u);

    const auto second = sim.step();
    ASSERT_TRUE(second.has_value());
    EXPECT_EQ(second->kind, EventKind::DeliverForward);
    EXPECT_EQ(second->seq, 1u);
    ASSERT_TRUE(sim.step().has_value());
    EXPECT_FALSE(sim.step().has_value());
    EXPECT_TRUE(sim.flows()[0].terminal.has_value());
}

TEST(Simulation, InterleavedFlowsMatchIndependentRuns) {
    NetworkConfig net;
    net.topology = {{"A", "B", "C", "D", "E"},
                    {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"B", "E", 2}, {"E", "D", 2}}};
    const Injection one{"A", StateVector{0.6, 0.8}, "D"};
    const Injection two{"E", StateVector{Amplitude(0, 1), 0.5}, "A"};

    Simulation sim(net, 5);
    const RunResult both = sim.run({one, two}, true);
    // Events of the two flows alternate in seq order.
    std::vector<std::uint64_t> flow_order;
    for (const auto &e : both.trace.entries()) {
        if (e.kind == TraceKind::Protocol && (flow_order.empty() || flow_order.back() != e.flow)) flow_order.push_back(e.flow);
    }
    EXPECT_GT(flow_order.size(), 2u);

    Scenario solo;
    solo.network = net;
    solo.seed = 5;
    solo.injections = {one};
    const RunResult r1 = run(solo);
    solo.injections = {two};
    const RunResult r2 = run(solo);
    EXPECT_EQ(masked(both.trace.for_flow(0)), masked(r1.trace.for_flow(0)));
    EXPECT_EQ(masked(both.trace.for_flow(1)), masked(r2.trace.for_flow(0)));
    for (const auto &f : both.flows) EXPECT_GE(f.terminal_fidelity, 1.0 - 1e-9);
}

TEST(Simulation, MessageConservationInterleaved) {
    std::mt19937_64 gen(12);
    for (int round = 0; round < 20; ++round) {
        Scenario sc;
        sc.network.topology = random_connected(gen, 6);
        sc.seed = gen();
        sc.interleaved = true;
        for (int k = 0; k < 4; ++k) {
            const auto &nodes = sc.network.topology.nodes;
            const std::size_t s = gen() % nodes.size();
            std::size_t d = gen() % nodes.size();
            while (d == s) d = gen() % nodes.size();
            sc.injections.push_back({nodes[s], RandomState{}, nodes[d]});
        }
        const RunResult r = run(sc);
        std::size_t hops = 0;
        for (const auto &f : r.flows) hops += f.hops.size();
        std::size_t forwards = 0;
        std::size_t qsrs = 0;
        for (const auto &e : r.trace.entries()) {
            forwards += e.line.rfind("forward(", 0) == 0;
            qsrs += e.line.rfind("qsr(", 0) == 0;
        }
        EXPECT_EQ(forwards, hops);
        EXPECT_EQ(qsrs, hops);
    }
}

TEST(Simulation, DeterministicTrace) {
    Scenario sc;
    sc.network = chain(5);
    sc.network.reserve = {{"N1", "N2", 2}};
    sc.injections = {{"N0", RandomState{}, "N4"}, {"N4", RandomState{}, "N1"}};
    sc.seed = 99;
    const std::string a = run(sc).trace.render(true);
    const std::string b = run(sc).trace.render(true);
    EXPECT_EQ(a, b);
    sc.seed = 100;
    EXPECT_NE(run(sc).trace.render(true), a);
}

TEST(Simulation, ReservePairsAreUsedFirst) {
    Scenario sc;
    sc.network = load_network_config(std::string(QROUTER_DATA) + "/chain6.json");
    sc.injections = {{"N0", StateVector{1.0, 0.0}, "N5"}};
    const RunResult r = run(sc);
    std::vector<std::uint64_t> ids;
    for (const auto &h : r.flows[0].hops) ids.push_back(h.ep_id.value);
    // Reserve: N0-N1 gets 0, N2-N3 gets 1 and 2; the rest are made on demand.
    EXPECT_EQ(ids, (std::vector<std::uint64_t>{0, 3, 1, 4, 5}));
    EXPECT_EQ(r.flows[0].terminal_state, "(1.0000)|0>");
    const std::string with_epm = r.trace.render(true);
    EXPECT_NE(with_epm.find("EPM\ncreateEpr(N0, N1)\n  return(epId: 0)\n"), std::string::npos);
    EXPECT_EQ(r.trace.render().find("EPM"), std::string::npos);
}

TEST(Simulation, ErrorsCarryEventSeq) {
    NetworkConfig net = chain(3);
    net.topology.nodes.push_back("Island");
    Simulation sim(net, 0);
    sim.schedule_injection({"N0", StateVector{1.0, 0.0}, "Island"});
    try {
        sim.step();
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::Unroutable);
        EXPECT_EQ(std::string(e.what()).rfind("event 0: ", 0), 0u) << e.what();
    }
    EXPECT_FALSE(sim.warnings().empty());
}

TEST(Simulation, RejectsBadInjections) {
    Simulation sim(chain(3), 0);
    EXPECT_THROW(sim.schedule_injection({"N0", StateVector{1.0, 0.0}, "N0"}), Error);
    EXPECT_THROW(sim.schedule_injection({"N0", StateVector{1.0, 0.0}, "Nope"}), Error);
    EXPECT_THROW(sim.schedule_injection({"N0", StateVector{0.0, 0.0}, "N1"}), Error);
}

TEST(SimulationProperty, EndToEndFidelityOnRandomTopologies) {
    std::mt19937_64 gen(31);
    for (int round = 0; round < 12; ++round) {
        const std::size_t n = 2 + static_cast<std::size_t>(round % 5);
        NetworkConfig net;
        net.topology = random_connected(gen, n);
        Simulation sim(net, gen());
        const NodeId &src = net.topology.nodes.front();
        const NodeId &dst = net.topology.nodes.back();
        for (int k = 0; k < 50; ++k) {
            const std::uint64_t flow = sim.schedule_injection({src, RandomState{}, dst});
            sim.run_until_idle();
            const FlowRecord &f = sim.flows()[flow];
            ASSERT_TRUE(f.terminal.has_value());
            ASSERT_LE(f.hops.size(), 5u);
            EXPECT_GE(f.terminal_fidelity, 1.0 - 1e-9);
            EXPECT_GE(sim.network().reg().fidelity(*f.terminal, f.injected.alpha, f.injected.beta), 1.0 - 1e-9);
            // Completion: one hop per link of the routed path.
            NodeId at = src;
            std::size_t path = 0;
            while (at != dst) {
                at = next_hop(sim.network().table(at), dst);
                ++path;
            }
            EXPECT_EQ(f.hops.size(), path);
            sim.network().reg().release(*f.terminal);
        }
    }
}

TEST(SimulationProperty, SingleLiveCopyAfterEveryHop) {
    std::mt19937_64 gen(8);
    for (int round = 0; round < 10; ++round) {
        NetworkConfig net = chain(6);
        net.reserve = {{"N1", "N2", 1}, {"N3", "N4", 2}};
        Simulation sim(net, gen());
        sim.schedule_reserves(net.reserve);
        sim.run_until_idle();
        sim.schedule_injection({"N0", RandomState{}, "N5"});
        const StateVector payload = sim.flows()[0].injected;
        while (sim.step()) {
            const auto &reg = sim.network().reg();
            const auto &flow = sim.flows()[0];
            // Qubits holding the payload up to some Pauli frame.
            int copies = 0;
            for (QubitId q : reg.live_qubits()) {
                const QubitId one[] = {q};
                const auto terms = reg.try_peek_joint_state(one);
                if (!terms) continue;
                const oracle::Vec v{(*terms)[0].amplitude, (*terms)[1].amplitude};
                for (int r = 0; r < 4; ++r) {
                    oracle::Vec c = v;
                    if (r & 1) c = oracle::mul(oracle::pauli_x(), c);
                    if (r & 2) c = oracle::mul(oracle::pauli_z(), c);
                    if (std::norm(oracle::inner({payload.alpha, payload.beta}, c)) >= 1.0 - 1e-9) {
                        ++copies;
                        break;
                    }
                }
            }
            EXPECT_EQ(copies, 1);
            if (flow.terminal) {
                EXPECT_GE(reg.fidelity(*flow.terminal, payload.alpha, payload.beta), 1.0 - 1e-9);
                continue;
            }
            // In flight: the receiver's half becomes the payload once the
            // pending correction is applied.
            const auto &entries = sim.network().trace().entries();
            auto last = std::find_if(entries.rbegin(), entries.rend(),
                                     [](const TraceEntry &e) { return e.line.rfind("forward(", 0) == 0; });
            ASSERT_NE(last, entries.rend());
            const ForwardMessage msg = parse_forward_json(last->line.substr(8, last->line.size() - 9));
            const EprRecord &pair = sim.network().epm().record(msg.teleport_result.ep_id);
            const QubitId far = pair.node_a == last->node ? pair.qubit_b : pair.qubit_a;
            const QubitId one[] = {far};
            const auto terms = reg.peek_joint_state(one);
            oracle::Vec c{terms[0].amplitude, terms[1].amplitude};
            if (msg.teleport_result.bsm_result.m_epr()) c = oracle::mul(oracle::pauli_x(), c);
            if (msg.teleport_result.bsm_result.m_source()) c = oracle::mul(oracle::pauli_z(), c);
            EXPECT_GE(std::norm(oracle::inner({payload.alpha, payload.beta}, c)), 1.0 - 1e-9);
        }
    }
}

TEST(SimulationProperty, TraceWellFormedAndEndpointsStable) {
    static const std::regex ret(R"(  return\(epId: (\d+), bsmResult: \d\))");
    static const std::regex qsr(R"re(qsr\(\{"epId":(\d+),"bsmResult":\d\}\))re");
    std::mt19937_64 gen(77);
    for (int round = 0; round < 20; ++round) {
        Scenario sc;
        sc.network.topology = random_connected(gen, 6);
        sc.seed = gen();
        sc.interleaved = round % 2 == 1;
        sc.injections = {{"v0", RandomState{}, "v5"}, {"v5", RandomState{}, "v1"}};
        const RunResult r = run(sc);
        const auto &entries = r.trace.entries();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].line.rfind("teleport(", 0) != 0) continue;
            std::smatch m;
            ASSERT_TRUE(std::regex_match(entries[i + 3].line, m, ret));
            const std::string id = m[1];
            int matches = 0;
            bool after = false;
            for (std::size_t j = 0; j < entries.size(); ++j) {
                std::smatch q;
                if (std::regex_match(entries[j].line, q, qsr) && q[1] == id) {
                    ++matches;
                    after = j > i;
                }
            }
            EXPECT_EQ(matches, 1);
            EXPECT_TRUE(after);
        }
        for (const auto &f : r.flows) {
            for (const auto &e : r.trace.for_flow(f.id)) {
                if (e.line.rfind("forward(", 0) != 0) continue;
                const ForwardMessage msg = parse_forward_json(e.line.substr(8, e.line.size() - 9));
                EXPECT_EQ(msg.src, f.source);
                EXPECT_EQ(msg.dest, f.dest);
            }
        }
    }
}

TEST(SimulationProperty, PlaneAgreement) {
    std::mt19937_64 gen(4);
    for (int round = 0; round < 30; ++round) {
        Scenario sc;
        sc.network.topology = random_connected(gen, 6);
        sc.seed = gen();
        sc.injections = {{"v0", RandomState{}, "v3"}};
        const RunResult r = run(sc);
        for (const HopRecord &h : r.flows[0].hops) {
            EXPECT_TRUE((h.epr_node_a == h.from && h.epr_node_b == h.to) ||
                        (h.epr_node_a == h.to && h.epr_node_b == h.from));
        }
    }
}

TEST(FindSeed, GivesUpWithinLimit) {
    EXPECT_FALSE(find_seed(line3(0), {0, 1, 2}, 0, 50).has_value());
    const auto seed = find_seed(line3(0), {3, 0}, 0, 1000);
    ASSERT_TRUE(seed.has_value());
    const RunResult r = run(line3(*seed));
    EXPECT_EQ(r.flows[0].hops[0].bsm_result.value(), 3);
    EXPECT_EQ(r.flows[0].hops[1].bsm_result.value(), 0);
}

}  // namespace
}  // namespace qrouter
