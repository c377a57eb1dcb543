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

#include <cmath>
#include <numbers>

#include "qrouter/error.hpp"

namespace qrouter {

namespace {

constexpr std::uint64_t kStateStreamSalt = 0x9E3779B97F4A7C15ULL;

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

StateVector random_state(std::mt19937_64 &rng) {
    const double cos_theta = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double half = std::acos(cos_theta) / 2.0;
    return {Amplitude{std::cos(half), 0.0}, std::polar(std::sin(half), phi)};
}

RoutingTables resolve_tables(const NetworkConfig &config, std::vector<std::string> *warnings) {
    TableBuild built = build_tables(config.topology);
    apply_explicit_entries(built.tables, config.tables, config.topology);
    if (warnings != nullptr) {
        warnings->insert(warnings->end(), built.warnings.begin(), built.warnings.end());
    }
    return std::move(built.tables);
}

Simulation::Simulation(const NetworkConfig &config, std::uint64_t seed) : state_rng_(seed ^ kStateStreamSalt) {
    RoutingTables tables = resolve_tables(config, &warnings_);
    net_ = std::make_unique<Network>(config.topology.nodes, std::move(tables), seed);
    for (const NodeId &n : config.topology.nodes) {
        routers_.emplace(n, Router(n, *net_));
    }
}

Router &Simulation::router(const NodeId &id) {
    auto it = routers_.find(id);
    if (it == routers_.end()) {
        throw Error(Errc::UnknownNode, "no node '" + id.str() + "'");
    }
    return it->second;
}

void Simulation::push(std::variant<Provision, Inject, Deliver> body) {
    queue_.push_back({next_seq_++, std::move(body)});
}

void Simulation::schedule_provision(const NodeId &a, const NodeId &b) {
    if (!net_->has_node(a) || !net_->has_node(b)) {
        throw Error(Errc::UnknownNode, "reserve names unknown node " + a.str() + "-" + b.str());
    }
    push(Provision{a, b});
}

void Simulation::schedule_reserves(const std::vector<ReserveSpec> &reserve) {
    for (const ReserveSpec &r : reserve) {
        for (std::size_t i = 0; i < r.count; ++i) {
            schedule_provision(r.a, r.b);
        }
    }
}

std::uint64_t Simulation::schedule_injection(const Injection &injection) {
    for (const NodeId *n : {&injection.source, &injection.dest}) {
        if (!net_->has_node(*n)) {
            throw Error(Errc::UnknownNode, "injection names unknown node '" + n->str() + "'");
        }
    }
    if (injection.source == injection.dest) {
        throw Error(Errc::SameNode, "injection source and destination are both '" + injection.source.str() + "'");
    }
    FlowRecord flow;
    flow.id = flows_.size();
    flow.source = injection.source;
    flow.dest = injection.dest;
    if (const auto *sv = std::get_if<StateVector>(&injection.state)) {
        const double norm = std::sqrt(std::norm(sv->alpha) + std::norm(sv->beta));
        if (!(norm > 1e-150) || !std::isfinite(norm)) {
            throw Error(Errc::NonNormalizable, "injected state is not normalizable");
        }
        flow.injected = {sv->alpha / norm, sv->beta / norm};
    } else {
        flow.injected = random_state(state_rng_);
    }
    flows_.push_back(std::move(flow));
    push(Inject{flows_.back().id});
    return flows_.back().id;
}

std::optional<ProcessedEvent> Simulation::step() {
    if (queue_.empty()) {
        return std::nullopt;
    }
    Event event = std::move(queue_.front());
    queue_.pop_front();
    try {
        return process(event);
    } catch (const Error &e) {
        throw Error(e.code(), "event " + std::to_string(event.seq) + ": " + e.what());
    }
}

ProcessedEvent Simulation::process(Event &event) {
    ProcessedEvent done{event.seq, EventKind::Provision, std::nullopt};
    if (auto *p = std::get_if<Provision>(&event.body)) {
        net_->set_active_flow(0);
        net_->epm().create_epr(p->a, p->b);
        return done;
    }
    if (auto *inj = std::get_if<Inject>(&event.body)) {
        FlowRecord &flow = flows_.at(inj->flow);
        done.kind = EventKind::Inject;
        done.flow = flow.id;
        net_->set_active_flow(flow.id);
        Router &src = router(flow.source);
        const QubitId q = src.get_qubit(flow.injected);
        Delivery d = src.send_qubit(q, flow.dest);
        push(Deliver{flow.id, flow.source, std::move(d)});
        return done;
    }
    auto &del = std::get<Deliver>(event.body);
    FlowRecord &flow = flows_.at(del.flow);
    done.kind = EventKind::DeliverForward;
    done.flow = flow.id;
    net_->set_active_flow(flow.id);

    const ForwardMessage &msg = del.delivery.message;
    const EprRecord &pair = net_->epm().record(msg.teleport_result.ep_id);
    flow.hops.push_back({del.from, del.delivery.to, pair.id, pair.node_a, pair.node_b, msg.teleport_result.bsm_result});

    Router &receiver = router(del.delivery.to);
    auto outcome = receiver.receive_forward(msg);
    if (auto *next = std::get_if<Delivery>(&outcome)) {
        push(Deliver{flow.id, receiver.id(), std::move(*next)});
    } else {
        const QubitId q = std::get<QubitId>(outcome);
        const QubitId one[] = {q};
        flow.terminal = q;
        flow.terminal_fidelity = net_->reg().fidelity(q, flow.injected.alpha, flow.injected.beta);
        flow.terminal_state = describe_state(net_->reg(), one);
    }
    return done;
}

void Simulation::run_until_idle() {
    while (step()) {
    }
}

RunResult Simulation::run(const std::vector<Injection> &injections, bool interleaved) {
    run_until_idle();
    if (interleaved) {
        for (const Injection &inj : injections) {
            schedule_injection(inj);
        }
        run_until_idle();
    } else {
        for (const Injection &inj : injections) {
            schedule_injection(inj);
            run_until_idle();
        }
    }
    return collect();
}

RunResult Simulation::collect() const {
    RunResult out;
    out.trace = net_->trace();
    out.flows = flows_;
    out.warnings = warnings_;
    for (const FlowRecord &f : flows_) {
        if (f.terminal) {
            out.terminals.push_back(*f.terminal);
        }
    }
    return out;
}

RunResult run(const Scenario &scenario) {
    Simulation sim(scenario.network, scenario.seed);
    sim.schedule_reserves(scenario.network.reserve);
    return sim.run(scenario.injections, scenario.interleaved);
}

std::optional<std::uint64_t> find_seed(const Scenario &scenario, const std::vector<int> &wanted, std::uint64_t first,
                                       std::uint64_t count) {
    Scenario trial = scenario;
    for (std::uint64_t seed = first; seed - first < count; ++seed) {
        trial.seed = seed;
        const RunResult result = run(trial);
        if (result.flows.empty()) {
            return std::nullopt;
        }
        const auto &hops = result.flows.front().hops;
        if (hops.size() != wanted.size()) {
            continue;
        }
        bool match = true;
        for (std::size_t i = 0; i < hops.size() && match; ++i) {
            match = hops[i].bsm_result.value() == wanted[i];
        }
        if (match) {
            return seed;
        }
    }
    return std::nullopt;
}

}  // namespace qrouter
