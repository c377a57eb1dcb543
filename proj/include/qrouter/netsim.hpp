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

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qrouter/node.hpp"

namespace qrouter {

struct ReserveSpec {
    NodeId a;
    NodeId b;
    std::size_t count = 0;

    friend bool operator==(const ReserveSpec &, const ReserveSpec &) = default;
};

/// Static description of a network: graph, optional explicit forwarding
/// entries and optional pre-created pair reserves.
struct NetworkConfig {
    Topology topology;
    std::map<NodeId, std::vector<ForwardingEntry>> tables;
    std::vector<ReserveSpec> reserve;

    friend bool operator==(const NetworkConfig &, const NetworkConfig &) = default;
};

/// Chosen from the random-state stream of the run, which is separate from
/// the measurement RNG.
struct RandomState {};

using InjectedState = std::variant<StateVector, RandomState>;

struct Injection {
    NodeId source;
    InjectedState state;
    NodeId dest;
};

struct Scenario {
    NetworkConfig network;
    std::vector<Injection> injections;
    std::uint64_t seed = 0;
    /// Schedule every injection up front instead of running each to completion.
    bool interleaved = false;
};

/// One teleportation hop as observed by the event loop: the digital
/// delivery (from -> to) and the pair that carried the quantum state.
struct HopRecord {
    NodeId from;
    NodeId to;
    EprId ep_id;
    NodeId epr_node_a;
    NodeId epr_node_b;
    BsmResult bsm_result;
};

struct FlowRecord {
    std::uint64_t id = 0;
    NodeId source;
    NodeId dest;
    StateVector injected{};
    std::vector<HopRecord> hops;
    std::optional<QubitId> terminal;
    double terminal_fidelity = 0.0;
    std::string terminal_state;
};

enum class EventKind { Provision, Inject, DeliverForward };

struct ProcessedEvent {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Provision;
    std::optional<std::uint64_t> flow;
};

struct RunResult {
    Trace trace;
    std::vector<FlowRecord> flows;
    std::vector<QubitId> terminals;
    std::vector<std::string> warnings;
};

/// Deterministic single-queue event loop over one Network. Classical
/// delivery is reliable and in order, one event per hop.
class Simulation {
  public:
    Simulation(const NetworkConfig &config, std::uint64_t seed);

    Network &network() { return *net_; }
    const Network &network() const { return *net_; }
    const std::vector<std::string> &warnings() const { return warnings_; }
    const std::vector<FlowRecord> &flows() const { return flows_; }

    void schedule_provision(const NodeId &a, const NodeId &b);
    /// Queues an injection and returns its flow id.
    std::uint64_t schedule_injection(const Injection &injection);
    /// Queues provision events for every configured reserve.
    void schedule_reserves(const std::vector<ReserveSpec> &reserve);

    /// Processes the lowest-seq pending event; nullopt when the queue is empty.
    std::optional<ProcessedEvent> step();
    void run_until_idle();

    /// Runs a whole scenario on this simulation.
    RunResult run(const std::vector<Injection> &injections, bool interleaved);

  private:
    struct Provision {
        NodeId a;
        NodeId b;
    };
    struct Inject {
        std::uint64_t flow;
    };
    struct Deliver {
        std::uint64_t flow;
        NodeId from;
        Delivery delivery;
    };
    struct Event {
        std::uint64_t seq;
        std::variant<Provision, Inject, Deliver> body;
    };

    void push(std::variant<Provision, Inject, Deliver> body);
    ProcessedEvent process(Event &event);
    Router &router(const NodeId &id);
    RunResult collect() const;

    std::unique_ptr<Network> net_;
    std::map<NodeId, Router> routers_;
    std::deque<Event> queue_;
    std::uint64_t next_seq_ = 0;
    std::vector<FlowRecord> flows_;
    std::vector<std::string> warnings_;
    std::mt19937_64 state_rng_;
};

/// Tables for a config: derived shortest-path tables overridden by the
/// explicit entries. Warnings from derivation are appended to `warnings`.
RoutingTables resolve_tables(const NetworkConfig &config, std::vector<std::string> *warnings = nullptr);

RunResult run(const Scenario &scenario);

/// First seed in [first, first + count) whose run yields exactly `wanted`
/// as the bsmResult sequence of flow 0.
std::optional<std::uint64_t> find_seed(const Scenario &scenario, const std::vector<int> &wanted,
                                       std::uint64_t first = 0, std::uint64_t count = 100000);

/// Haar-random single-qubit state drawn from `rng`.
StateVector random_state(std::mt19937_64 &rng);

}  // namespace qrouter
