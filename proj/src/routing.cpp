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

#include "qrouter/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <utility>

#include "qrouter/error.hpp"

namespace qrouter {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

struct Arc {
    std::size_t to;
    std::int64_t metric;
};

}  // namespace

NodeId::NodeId(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw Error(Errc::InvalidArgument, "node name must not be empty");
    }
}

void Topology::validate() const {
    std::set<NodeId> seen;
    for (const NodeId &n : nodes) {
        if (n.empty()) {
            throw Error(Errc::InvalidTopology, "node name must not be empty");
        }
        if (!seen.insert(n).second) {
            throw Error(Errc::InvalidTopology, "duplicate node '" + n.str() + "'");
        }
    }
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const Link &l : links) {
        for (const NodeId *end : {&l.a, &l.b}) {
            if (seen.count(*end) == 0) {
                throw Error(Errc::InvalidTopology, "link endpoint '" + end->str() + "' is not a node");
            }
        }
        if (l.a == l.b) {
            throw Error(Errc::InvalidTopology, "self loop at '" + l.a.str() + "'");
        }
        if (l.metric < 1) {
            throw Error(Errc::InvalidTopology,
                        "link " + l.a.str() + "-" + l.b.str() + " has metric " + std::to_string(l.metric));
        }
        if (!edges.insert(std::minmax(l.a, l.b)).second) {
            throw Error(Errc::InvalidTopology, "repeated link " + l.a.str() + "-" + l.b.str());
        }
    }
}

bool Topology::has_node(const NodeId &id) const { return std::find(nodes.begin(), nodes.end(), id) != nodes.end(); }

bool Topology::adjacent(const NodeId &a, const NodeId &b) const {
    return std::any_of(links.begin(), links.end(),
                       [&](const Link &l) { return (l.a == a && l.b == b) || (l.a == b && l.b == a); });
}

void ForwardingTable::add(ForwardingEntry entry) {
    if (entry.metric < 1) {
        throw Error(Errc::InvalidTopology, "link metric must be >= 1 in table of '" + owner_.str() + "'");
    }
    for (const ForwardingEntry &e : entries_) {
        if (e.destination == entry.destination && e.interface == entry.interface) {
            throw Error(Errc::InvalidTopology, "table of '" + owner_.str() + "' has two entries for " +
                                                   entry.destination.str() + " via " + entry.interface.str());
        }
    }
    entries_.push_back(std::move(entry));
}

void ForwardingTable::erase_destination(const NodeId &destination) {
    std::erase_if(entries_, [&](const ForwardingEntry &e) { return e.destination == destination; });
}

bool ForwardingTable::routes(const NodeId &destination) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const ForwardingEntry &e) { return e.destination == destination; });
}

NodeId next_hop(const ForwardingTable &table, const NodeId &dest) {
    const ForwardingEntry *best = nullptr;
    for (const ForwardingEntry &e : table.entries()) {
        if (e.destination != dest) {
            continue;
        }
        if (best == nullptr || e.metric < best->metric || (e.metric == best->metric && e.interface < best->interface)) {
            best = &e;
        }
    }
    if (best == nullptr) {
        throw Error(Errc::Unroutable, "'" + table.owner().str() + "' has no route to '" + dest.str() + "'");
    }
    return best->interface;
}

TableBuild build_tables(const Topology &topology) {
    topology.validate();
    const std::size_t n = topology.nodes.size();
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index.emplace(topology.nodes[i], i);
    }
    std::vector<std::vector<Arc>> adj(n);
    for (const Link &l : topology.links) {
        const std::size_t a = index.at(l.a);
        const std::size_t b = index.at(l.b);
        adj[a].push_back({b, l.metric});
        adj[b].push_back({a, l.metric});
    }
    for (auto &arcs : adj) {
        std::sort(arcs.begin(), arcs.end(),
                  [&](const Arc &x, const Arc &y) { return topology.nodes[x.to] < topology.nodes[y.to]; });
    }

    // dist[d][v]: cost from v to d (links are symmetric).
    std::vector<std::vector<std::int64_t>> dist(n, std::vector<std::int64_t>(n, kUnreachable));
    for (std::size_t d = 0; d < n; ++d) {
        auto &dd = dist[d];
        using Item = std::pair<std::int64_t, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dd[d] = 0;
        pq.push({0, d});
        while (!pq.empty()) {
            auto [cost, v] = pq.top();
            pq.pop();
            if (cost != dd[v]) {
                continue;
            }
            for (const Arc &arc : adj[v]) {
                if (cost + arc.metric < dd[arc.to]) {
                    dd[arc.to] = cost + arc.metric;
                    pq.push({dd[arc.to], arc.to});
                }
            }
        }
    }

    TableBuild out;
    for (std::size_t s = 0; s < n; ++s) {
        ForwardingTable table(topology.nodes[s]);
        for (std::size_t d = 0; d < n; ++d) {
            if (d == s) {
                continue;
            }
            if (dist[d][s] == kUnreachable) {
                out.warnings.push_back("'" + topology.nodes[s].str() + "' cannot reach '" + topology.nodes[d].str() +
                                       "'");
                continue;
            }
            for (const Arc &arc : adj[s]) {
                if (dist[d][arc.to] != kUnreachable && arc.metric + dist[d][arc.to] == dist[d][s]) {
                    table.add({topology.nodes[d], topology.nodes[arc.to], arc.metric});
                    break;
                }
            }
        }
        out.tables.emplace(topology.nodes[s], std::move(table));
    }
    return out;
}

void validate_table(const ForwardingTable &table, const Topology &topology) {
    if (!topology.has_node(table.owner())) {
        throw Error(Errc::InvalidTopology, "table owner '" + table.owner().str() + "' is not a node");
    }
    for (const ForwardingEntry &e : table.entries()) {
        if (!topology.has_node(e.destination)) {
            throw Error(Errc::InvalidTopology, "table of '" + table.owner().str() + "' names unknown destination '" +
                                                   e.destination.str() + "'");
        }
        if (!topology.adjacent(table.owner(), e.interface)) {
            throw Error(Errc::InvalidTopology, "interface '" + e.interface.str() + "' in table of '" +
                                                   table.owner().str() + "' is not a neighbor");
        }
    }
}

void apply_explicit_entries(RoutingTables &tables,
                            const std::map<NodeId, std::vector<ForwardingEntry>> &explicit_entries,
                            const Topology &topology) {
    for (const auto &[owner, entries] : explicit_entries) {
        ForwardingTable given(owner);
        for (const ForwardingEntry &e : entries) {
            given.add(e);
        }
        validate_table(given, topology);

        ForwardingTable &table = tables.try_emplace(owner, owner).first->second;
        for (const ForwardingEntry &e : entries) {
            table.erase_destination(e.destination);
        }
        for (const ForwardingEntry &e : entries) {
            table.add(e);
        }
    }
}

}  // namespace qrouter
