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

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qrouter {

/// Name of a network node. Never empty.
class NodeId {
  public:
    NodeId() = default;
    explicit NodeId(std::string name);
    NodeId(const char *name) : NodeId(std::string(name)) {}

    const std::string &str() const { return name_; }
    bool empty() const { return name_.empty(); }

    friend auto operator<=>(const NodeId &, const NodeId &) = default;
    friend std::ostream &operator<<(std::ostream &os, const NodeId &id) { return os << id.name_; }

  private:
    std::string name_;
};

struct Link {
    NodeId a;
    NodeId b;
    std::int64_t metric = 1;

    friend bool operator==(const Link &, const Link &) = default;
};

/// Undirected weighted graph of nodes. Metrics are abstract additive costs.
struct Topology {
    std::vector<NodeId> nodes;
    std::vector<Link> links;

    /// Throws InvalidTopology on duplicate or unknown nodes, self loops,
    /// repeated links, or metrics below 1.
    void validate() const;
    bool has_node(const NodeId &id) const;
    bool adjacent(const NodeId &a, const NodeId &b) const;

    friend bool operator==(const Topology &, const Topology &) = default;
};

struct ForwardingEntry {
    NodeId destination;
    NodeId interface;
    std::int64_t metric = 1;

    friend bool operator==(const ForwardingEntry &, const ForwardingEntry &) = default;
};

class ForwardingTable {
  public:
    ForwardingTable() = default;
    explicit ForwardingTable(NodeId owner) : owner_(std::move(owner)) {}

    const NodeId &owner() const { return owner_; }
    const std::vector<ForwardingEntry> &entries() const { return entries_; }

    /// Adds an entry. Rejects metric < 1 and a second entry with the same
    /// (destination, interface).
    void add(ForwardingEntry entry);
    /// Drops every entry for `destination`.
    void erase_destination(const NodeId &destination);
    bool routes(const NodeId &destination) const;

    friend bool operator==(const ForwardingTable &, const ForwardingTable &) = default;

  private:
    NodeId owner_;
    std::vector<ForwardingEntry> entries_;
};

using RoutingTables = std::map<NodeId, ForwardingTable>;

/// Interface of the minimum-metric entry for `dest`; ties go to the
/// lexicographically smallest interface. Throws Unroutable.
NodeId next_hop(const ForwardingTable &table, const NodeId &dest);

/// The single lookup used by both the digital and the quantum plane.
inline NodeId shared_table_lookup(const ForwardingTable &table, const NodeId &dest) {
    return next_hop(table, dest);
}

struct TableBuild {
    RoutingTables tables;
    std::vector<std::string> warnings;
};

/// Shortest-path tables for every node: one entry per reachable destination,
/// with the first hop of a minimum-cost path (smallest name on ties) and the
/// metric of that first link. Unreachable pairs are reported as warnings.
TableBuild build_tables(const Topology &topology);

/// Checks that every interface of `table` is a neighbor of its owner.
void validate_table(const ForwardingTable &table, const Topology &topology);

/// Replaces derived entries with explicit ones, per (owner, destination).
void apply_explicit_entries(RoutingTables &tables,
                            const std::map<NodeId, std::vector<ForwardingEntry>> &explicit_entries,
                            const Topology &topology);

}  // namespace qrouter
