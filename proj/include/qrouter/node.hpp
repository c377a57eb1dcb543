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

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qrouter/epm.hpp"
#include "qrouter/qsim.hpp"
#include "qrouter/routing.hpp"
#include "qrouter/teleport.hpp"
#include "qrouter/trace.hpp"

namespace qrouter {

struct TeleportResult {
    EprId ep_id;
    BsmResult bsm_result;

    friend bool operator==(const TeleportResult &, const TeleportResult &) = default;
};

/// Classical datagram of the digital forwarding plane. src and dest are the
/// end points of the flow; the hop it is addressed to travels alongside.
struct ForwardMessage {
    NodeId src;
    NodeId dest;
    TeleportResult teleport_result;

    friend bool operator==(const ForwardMessage &, const ForwardMessage &) = default;
};

/// A forward message together with the neighbor it is delivered to.
struct Delivery {
    NodeId to;
    ForwardMessage message;
};

/// {"src":..,"dest":..,"teleportResult":{"epId":..,"bsmResult":..}}
std::string forward_json(const ForwardMessage &msg);
/// Inverse of forward_json. Throws InvalidArgument or InvalidBsmResult.
ForwardMessage parse_forward_json(const std::string &text);
/// {"epId":..,"bsmResult":..}
std::string qsr_json(const TeleportResult &result);

/// Prints the state of `qs` in trace format, or "(entangled)" when the
/// qubits do not factor out of the register.
std::string describe_state(const QuantumRegister &reg, std::span<const QubitId> qs);

/// Everything the routers of one simulation share: the global register,
/// qubit ownership, the EPM service, forwarding tables and the trace.
class Network {
  public:
    Network(std::vector<NodeId> nodes, RoutingTables tables, std::uint64_t seed);
    Network(const Network &) = delete;
    Network &operator=(const Network &) = delete;

    QuantumRegister &reg() { return reg_; }
    const QuantumRegister &reg() const { return reg_; }
    QubitOwnership &owners() { return owners_; }
    const QubitOwnership &owners() const { return owners_; }
    EntangledPairManager &epm() { return epm_; }
    const EntangledPairManager &epm() const { return epm_; }
    Trace &trace() { return trace_; }
    const Trace &trace() const { return trace_; }

    const std::vector<NodeId> &nodes() const { return nodes_; }
    bool has_node(const NodeId &n) const;

    /// Forwarding table of `owner`; an empty table when none was configured.
    const ForwardingTable &table(const NodeId &owner) const;
    /// Replaces the table of its owner. Later lookups on either plane see it.
    void set_table(ForwardingTable table);

    /// Flow id stamped on subsequent trace lines.
    void set_active_flow(std::uint64_t flow) { active_flow_ = flow; }
    void log(const NodeId &node, std::string line, TraceKind kind = TraceKind::Protocol);

  private:
    std::vector<NodeId> nodes_;
    RoutingTables tables_;
    QuantumRegister reg_;
    QubitOwnership owners_;
    EntangledPairManager epm_;
    Trace trace_;
    std::uint64_t active_flow_ = 0;
};

struct StateVector {
    Amplitude alpha;
    Amplitude beta;
};

using QubitSource = std::variant<StateVector, QubitId>;

/// The router at one node: binds its forwarding table (digital plane) to
/// its share of the entangled pairs (quantum plane).
class Router {
  public:
    Router(NodeId id, Network &net);

    const NodeId &id() const { return id_; }

    /// Fresh qubit with the given state, or pass-through of a live qubit this
    /// node already owns.
    QubitId get_qubit(const QubitSource &source);

    /// Teleports `q` one hop toward `dest`. `origin` is the src written into
    /// the forward message; it defaults to this node.
    Delivery send_qubit(QubitId q, const NodeId &dest, const std::optional<NodeId> &origin = std::nullopt);

    /// Recovers the teleported state. Returns the qubit when this node is
    /// the destination, otherwise the next delivery of the re-teleported state.
    std::variant<QubitId, Delivery> receive_forward(const ForwardMessage &msg);

  private:
    NodeId id_;
    Network &net_;
};

}  // namespace qrouter
