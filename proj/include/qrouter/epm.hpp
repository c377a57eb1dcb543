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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qrouter/qsim.hpp"
#include "qrouter/routing.hpp"

namespace qrouter {

struct EprId {
    std::uint64_t value = 0;

    friend auto operator<=>(const EprId &, const EprId &) = default;
};

enum class EprStatus { Available, Consumed };

struct EprRecord {
    EprId id;
    NodeId node_a;
    NodeId node_b;
    QubitId qubit_a;
    QubitId qubit_b;
    EprStatus status = EprStatus::Available;

    bool connects(const NodeId &x, const NodeId &y) const {
        return (node_a == x && node_b == y) || (node_a == y && node_b == x);
    }
    bool has_endpoint(const NodeId &n) const { return node_a == n || node_b == n; }
};

/// Which node holds which qubit. Nodes may only operate on qubits they own.
class QubitOwnership {
  public:
    void assign(QubitId q, NodeId owner) { owners_[q] = std::move(owner); }
    std::optional<NodeId> owner(QubitId q) const;
    bool owned_by(QubitId q, const NodeId &node) const;

  private:
    std::map<QubitId, NodeId> owners_;
};

/// Single logical EPM service: creates Bell pairs between nodes, labels
/// them with dense increasing ids, and hands each half to its endpoint.
class EntangledPairManager {
  public:
    using CreateListener = std::function<void(const EprRecord &)>;

    EntangledPairManager(QuantumRegister &reg, QubitOwnership &owners, std::set<NodeId> nodes);

    EprId create_epr(const NodeId &src, const NodeId &dest);

    /// Lowest-id available pair between `local` and `next_hop`, created on
    /// demand when none is available. Marks it consumed and returns the half
    /// held by `local`.
    std::pair<EprId, QubitId> take_epr(const NodeId &local, const NodeId &next_hop);

    QubitId lookup_remote_half(EprId id, const NodeId &holder) const;

    const EprRecord &record(EprId id) const;
    const std::vector<EprRecord> &records() const { return records_; }
    std::size_t available_between(const NodeId &a, const NodeId &b) const;

    /// Called after every pair creation, including on-demand ones.
    void set_create_listener(CreateListener listener) { on_create_ = std::move(listener); }

  private:
    void require_node(const NodeId &n) const;

    QuantumRegister &reg_;
    QubitOwnership &owners_;
    std::set<NodeId> nodes_;
    std::vector<EprRecord> records_;
    CreateListener on_create_;
};

}  // namespace qrouter
