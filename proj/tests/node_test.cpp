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

#include "qrouter/node.hpp"

#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "oracle.hpp"
#include "qrouter/error.hpp"
#include "qrouter/netsim.hpp"

namespace qrouter {
namespace {

template <typename F>
void expect_errc(Errc code, F &&f) {
    try {
        f();
        FAIL() << "expected error " << errc_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

NetworkConfig line3() {
    NetworkConfig c;
    c.topology = {{"Source", "QIR", "Destination"}, {{"Source", "QIR", 1}, {"QIR", "Destination", 1}}};
    return c;
}

std::unique_ptr<Network> make_network(const NetworkConfig &config, std::uint64_t seed = 0) {
    return std::make_unique<Network>(config.topology.nodes, resolve_tables(config), seed);
}

std::vector<std::string> lines_of(const Trace &trace, const NodeId &node) {
    std::vector<std::string> out;
    for (const auto &e : trace.entries()) {
        if (e.node == node && e.kind == TraceKind::Protocol) out.push_back(e.line);
    }
    return out;
}

TEST(ForwardMessageJson, MatchesPrototypeFormat) {
    const ForwardMessage msg{"Source", "Destination", {EprId{0}, BsmResult(0)}};
    EXPECT_EQ(forward_json(msg),
              R"({"src":"Source","dest":"Destination","teleportResult":{"epId":0,"bsmResult":0}})");
    EXPECT_EQ(qsr_json({EprId{1}, BsmResult(3)}), R"({"epId":1,"bsmResult":3})");
}

TEST(ForwardMessageJson, ParseInvertsFormat) {
    std::mt19937_64 gen(9);
    for (int i = 0; i < 50; ++i) {
        const ForwardMessage msg{NodeId("n" + std::to_string(gen() % 100)), NodeId("d" + std::to_string(gen() % 7)),
                                 {EprId{gen() % 100000}, BsmResult(static_cast<int>(gen() % 4))}};
        EXPECT_EQ(parse_forward_json(forward_json(msg)), msg);
    }
}

TEST(ForwardMessageJson, RejectsBadInput) {
    expect_errc(Errc::InvalidBsmResult, [] {
        parse_forward_json(R"({"src":"A","dest":"B","teleportResult":{"epId":0,"bsmResult":4}})");
    });
    expect_errc(Errc::InvalidArgument, [] { parse_forward_json(R"({"src":"A"})"); });
    expect_errc(Errc::InvalidArgument, [] { parse_forward_json("not json"); });
}

TEST(Router, GetQubitWithState) {
    auto net = make_network(line3());
    Router src("Source", *net);
    const QubitId q = src.get_qubit(StateVector{0.4091, 0.9125});
    EXPECT_TRUE(net->owners().owned_by(q, "Source"));
    EXPECT_EQ(lines_of(net->trace(), "Source"),
              (std::vector<std::string>{"getqubit()", "  return (0.4091)|0> + (0.9125)|1>"}));

    const QubitId zero = src.get_qubit(StateVector{1.0, 0.0});
    EXPECT_NEAR(net->reg().fidelity(zero, 1.0, 0.0), 1.0, 1e-12);
    expect_errc(Errc::NonNormalizable, [&] { src.get_qubit(StateVector{0.0, 0.0}); });
}

TEST(Router, GetQubitPassesThroughOwnedHandle) {
    auto net = make_network(line3());
    const EprId id = net->epm().create_epr("QIR", "Source");
    const QubitId half = net->epm().lookup_remote_half(id, "Source");
    Router src("Source", *net);
    EXPECT_EQ(src.get_qubit(half), half);
    EXPECT_EQ(lines_of(net->trace(), "Source").back(), "  return (entangled)");

    Router dst("Destination", *net);
    expect_errc(Errc::ForeignQubit, [&] { dst.get_qubit(half); });
    expect_errc(Errc::UnknownQubit, [&] { src.get_qubit(QubitId{12345}); });
}

TEST(Router, SendQubitEmitsTeleportAndForward) {
    auto net = make_network(line3());
    Router src("Source", *net);
    const QubitId q = src.get_qubit(StateVector{0.4091, 0.9125});
    const Delivery d = src.send_qubit(q, "Destination");
    EXPECT_EQ(d.to, NodeId("QIR"));
    EXPECT_EQ(d.message.src, NodeId("Source"));
    EXPECT_EQ(d.message.dest, NodeId("Destination"));
    EXPECT_EQ(d.message.teleport_result.ep_id.value, 0u);
    const int r = d.message.teleport_result.bsm_result.value();
    EXPECT_TRUE(r >= 0 && r <= 3);

    const auto lines = lines_of(net->trace(), "Source");
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[2], "teleport(qubit: (0.4091)|0> + (0.9125)|1>, nextHop: QIR)");
    EXPECT_EQ(lines[3], "  Entangled Pair ID: 0, state: (0.7071)|00> + (0.7071)|11>");
    EXPECT_EQ(lines[4], "  Bell State: (0.2893)|000> + (0.2893)|011> + (0.6452)|100> + (0.6452)|111>");
    EXPECT_EQ(lines[5], "  return(epId: 0, bsmResult: " + std::to_string(r) + ")");
    EXPECT_EQ(lines[6], "forward(" + forward_json(d.message) + ")");

    expect_errc(Errc::QubitMeasured, [&] { net->reg().apply_h(q); });
    expect_errc(Errc::QubitMeasured, [&] { src.send_qubit(q, "Destination"); });
}

TEST(Router, SendQubitUnroutable) {
    NetworkConfig config = line3();
    config.topology.nodes.push_back("Island");
    auto net = make_network(config);
    Router src("Source", *net);
    const QubitId q = src.get_qubit(StateVector{1.0, 0.0});
    expect_errc(Errc::Unroutable, [&] { src.send_qubit(q, "Island"); });
    EXPECT_TRUE(net->reg().is_live(q));
    EXPECT_TRUE(net->epm().records().empty());
}

TEST(Router, SendQubitRejectsForeignQubit) {
    auto net = make_network(line3());
    Router qir("QIR", *net);
    Router src("Source", *net);
    const QubitId q = src.get_qubit(StateVector{1.0, 0.0});
    expect_errc(Errc::ForeignQubit, [&] { qir.send_qubit(q, "Destination"); });
}

TEST(Router, RelayThenTerminal) {
    auto net = make_network(line3(), 3);
    Router src("Source", *net);
    Router qir("QIR", *net);
    Router dst("Destination", *net);
    const QubitId q = src.get_qubit(StateVector{0.4091, 0.9125});
    const Delivery first = src.send_qubit(q, "Destination");

    auto relay = qir.receive_forward(first.message);
    ASSERT_TRUE(std::holds_alternative<Delivery>(relay));
    const Delivery &second = std::get<Delivery>(relay);
    EXPECT_EQ(second.to, NodeId("Destination"));
    EXPECT_EQ(second.message.teleport_result.ep_id.value, 1u);
    EXPECT_EQ(second.message.src, NodeId("Source"));
    const auto qir_lines = lines_of(net->trace(), "QIR");
    EXPECT_EQ(qir_lines[0], "qsr(" + qsr_json(first.message.teleport_result) + ")");
    EXPECT_EQ(qir_lines[1], "  return(qubit: (0.4091)|0> + (0.9125)|1>)");
    EXPECT_EQ(qir_lines[2], "teleport(qubit: (0.4091)|0> + (0.9125)|1>, nextHop: Destination)");

    auto done = dst.receive_forward(second.message);
    ASSERT_TRUE(std::holds_alternative<QubitId>(done));
    const QubitId out = std::get<QubitId>(done);
    EXPECT_GE(net->reg().fidelity(out, 0.4091, 0.9125), 1.0 - 1e-9);
    EXPECT_EQ(lines_of(net->trace(), "Destination").back(), "  return(qubit: (0.4091)|0> + (0.9125)|1>)");
    EXPECT_TRUE(net->owners().owned_by(out, "Destination"));
}

TEST(Router, ReceiveForwardErrors) {
    auto net = make_network(line3());
    Router src("Source", *net);
    Router dst("Destination", *net);
    const QubitId q = src.get_qubit(StateVector{1.0, 0.0});
    const Delivery d = src.send_qubit(q, "Destination");
    // Pair 0 joins Source and QIR only.
    expect_errc(Errc::NotEndpoint, [&] { dst.receive_forward(d.message); });

    ForwardMessage unknown = d.message;
    unknown.teleport_result.ep_id = EprId{42};
    expect_errc(Errc::UnknownEpr, [&] { dst.receive_forward(unknown); });

    const EprId fresh = net->epm().create_epr("QIR", "Destination");
    ForwardMessage unused{"Source", "Destination", {fresh, BsmResult(0)}};
    expect_errc(Errc::PairNotConsumed, [&] { dst.receive_forward(unused); });
}

TEST(Router, SharedTableEditsReachBothPlanes) {
    NetworkConfig config;
    config.topology = {{"S", "A", "B", "D"}, {{"S", "A", 1}, {"S", "B", 1}, {"A", "D", 1}, {"B", "D", 1}}};
    auto net = make_network(config);
    Router s("S", *net);
    ForwardingTable t("S");
    t.add({"D", "B", 1});
    net->set_table(t);
    const Delivery d = s.send_qubit(s.get_qubit(StateVector{1.0, 0.0}), "D");
    EXPECT_EQ(d.to, NodeId("B"));
    EXPECT_TRUE(net->epm().record(d.message.teleport_result.ep_id).connects("S", "B"));
}

TEST(Router, EntanglementSwapAcrossRouters) {
    const double s = 1.0 / std::sqrt(2.0);
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        NetworkConfig config = line3();
        config.topology.nodes.push_back("Charlie");
        config.topology.links.push_back({"Charlie", "Source", 1});
        auto net = make_network(config, seed);
        const EprId link = net->epm().create_epr("Charlie", "Source");
        const QubitId charlie = net->epm().lookup_remote_half(link, "Charlie");
        Router src("Source", *net);
        Router qir("QIR", *net);
        Router dst("Destination", *net);
        const QubitId payload = src.get_qubit(net->epm().lookup_remote_half(link, "Source"));
        const Delivery a = src.send_qubit(payload, "Destination");
        const Delivery b = std::get<Delivery>(qir.receive_forward(a.message));
        const QubitId bob = std::get<QubitId>(dst.receive_forward(b.message));
        const QubitId cb[] = {charlie, bob};
        const auto terms = net->reg().peek_joint_state(cb);
        EXPECT_GE(std::norm(s * terms[0].amplitude + s * terms[3].amplitude), 1.0 - 1e-9);
        EXPECT_EQ(lines_of(net->trace(), "Destination").back(), "  return(qubit: (entangled))");
    }
}

}  // namespace
}  // namespace qrouter
