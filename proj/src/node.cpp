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

#include <algorithm>
#include <nlohmann/json.hpp>

#include "qrouter/error.hpp"

namespace qrouter {

using ordered_json = nlohmann::ordered_json;

std::string forward_json(const ForwardMessage &msg) {
    ordered_json j;
    j["src"] = msg.src.str();
    j["dest"] = msg.dest.str();
    j["teleportResult"]["epId"] = msg.teleport_result.ep_id.value;
    j["teleportResult"]["bsmResult"] = msg.teleport_result.bsm_result.value();
    return j.dump();
}

std::string qsr_json(const TeleportResult &result) {
    ordered_json j;
    j["epId"] = result.ep_id.value;
    j["bsmResult"] = result.bsm_result.value();
    return j.dump();
}

ForwardMessage parse_forward_json(const std::string &text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
        const auto &tr = j.at("teleportResult");
        const auto ep = tr.at("epId").get<std::int64_t>();
        if (ep < 0) {
            throw Error(Errc::InvalidArgument, "epId must be non-negative");
        }
        return ForwardMessage{NodeId(j.at("src").get<std::string>()), NodeId(j.at("dest").get<std::string>()),
                              TeleportResult{EprId{static_cast<std::uint64_t>(ep)},
                                             BsmResult(tr.at("bsmResult").get<int>())}};
    } catch (const nlohmann::json::exception &e) {
        throw Error(Errc::InvalidArgument, std::string("malformed forward message: ") + e.what());
    }
}

std::string describe_state(const QuantumRegister &reg, std::span<const QubitId> qs) {
    auto terms = reg.try_peek_joint_state(qs);
    return terms ? format_state(*terms) : "(entangled)";
}

Network::Network(std::vector<NodeId> nodes, RoutingTables tables, std::uint64_t seed)
    : nodes_(std::move(nodes)),
      tables_(std::move(tables)),
      reg_(seed),
      epm_(reg_, owners_, std::set<NodeId>(nodes_.begin(), nodes_.end())) {
    for (const NodeId &n : nodes_) {
        tables_.try_emplace(n, n);
    }
    epm_.set_create_listener([this](const EprRecord &r) {
        log(NodeId("EPM"), "createEpr(" + r.node_a.str() + ", " + r.node_b.str() + ")", TraceKind::Epm);
        log(NodeId("EPM"), "  return(epId: " + std::to_string(r.id.value) + ")", TraceKind::Epm);
    });
}

bool Network::has_node(const NodeId &n) const { return std::find(nodes_.begin(), nodes_.end(), n) != nodes_.end(); }

const ForwardingTable &Network::table(const NodeId &owner) const {
    auto it = tables_.find(owner);
    if (it == tables_.end()) {
        throw Error(Errc::UnknownNode, "no node '" + owner.str() + "'");
    }
    return it->second;
}

void Network::set_table(ForwardingTable table) {
    if (!has_node(table.owner())) {
        throw Error(Errc::UnknownNode, "no node '" + table.owner().str() + "'");
    }
    tables_[table.owner()] = std::move(table);
}

void Network::log(const NodeId &node, std::string line, TraceKind kind) {
    trace_.append({node, std::move(line), kind, active_flow_});
}

Router::Router(NodeId id, Network &net) : id_(std::move(id)), net_(net) {
    if (!net_.has_node(id_)) {
        throw Error(Errc::UnknownNode, "no node '" + id_.str() + "'");
    }
}

QubitId Router::get_qubit(const QubitSource &source) {
    QubitId q;
    if (const auto *state = std::get_if<StateVector>(&source)) {
        q = net_.reg().alloc_qubit(state->alpha, state->beta);
        net_.owners().assign(q, id_);
    } else {
        q = std::get<QubitId>(source);
        net_.reg().require_live(q);
        if (!net_.owners().owned_by(q, id_)) {
            throw Error(Errc::ForeignQubit, "qubit " + std::to_string(q.value) + " is not held by '" + id_.str() + "'");
        }
    }
    const QubitId one[] = {q};
    net_.log(id_, "getqubit()");
    net_.log(id_, "  return " + describe_state(net_.reg(), one));
    return q;
}

Delivery Router::send_qubit(QubitId q, const NodeId &dest, const std::optional<NodeId> &origin) {
    net_.reg().require_live(q);
    if (!net_.owners().owned_by(q, id_)) {
        throw Error(Errc::ForeignQubit, "qubit " + std::to_string(q.value) + " is not held by '" + id_.str() + "'");
    }
    const NodeId hop = shared_table_lookup(net_.table(id_), dest);
    const QubitId payload[] = {q};
    const std::string payload_state = describe_state(net_.reg(), payload);

    auto [ep_id, near] = net_.epm().take_epr(id_, hop);
    const EprRecord &pair = net_.epm().record(ep_id);
    const QubitId far = pair.qubit_a == near ? pair.qubit_b : pair.qubit_a;
    const QubitId pair_qubits[] = {near, far};
    const QubitId joint[] = {q, near, far};

    net_.log(id_, "teleport(qubit: " + payload_state + ", nextHop: " + hop.str() + ")");
    net_.log(id_, "  Entangled Pair ID: " + std::to_string(ep_id.value) +
                      ", state: " + describe_state(net_.reg(), pair_qubits));
    net_.log(id_, "  Bell State: " + describe_state(net_.reg(), joint));

    const BsmResult r = bell_state_measurement(net_.reg(), q, near);
    net_.log(id_, "  return(epId: " + std::to_string(ep_id.value) + ", bsmResult: " + std::to_string(r.value()) + ")");

    ForwardMessage msg{origin.value_or(id_), dest, {ep_id, r}};
    net_.log(id_, "forward(" + forward_json(msg) + ")");
    return {hop, std::move(msg)};
}

std::variant<QubitId, Delivery> Router::receive_forward(const ForwardMessage &msg) {
    const TeleportResult &tr = msg.teleport_result;
    const QubitId q = net_.epm().lookup_remote_half(tr.ep_id, id_);
    if (net_.epm().record(tr.ep_id).status != EprStatus::Consumed) {
        throw Error(Errc::PairNotConsumed,
                    "entangled pair " + std::to_string(tr.ep_id.value) + " was not used by the sender");
    }
    net_.log(id_, "qsr(" + qsr_json(tr) + ")");
    quantum_state_recovery(net_.reg(), q, tr.bsm_result);
    const QubitId one[] = {q};
    net_.log(id_, "  return(qubit: " + describe_state(net_.reg(), one) + ")");
    if (msg.dest == id_) {
        return q;
    }
    return send_qubit(q, msg.dest, msg.src);
}

}  // namespace qrouter
