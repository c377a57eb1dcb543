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

#include "qrouter/epm.hpp"

#include <string>

#include "qrouter/error.hpp"
#include "qrouter/teleport.hpp"

namespace qrouter {

std::optional<NodeId> QubitOwnership::owner(QubitId q) const {
    auto it = owners_.find(q);
    if (it == owners_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool QubitOwnership::owned_by(QubitId q, const NodeId &node) const {
    auto it = owners_.find(q);
    return it != owners_.end() && it->second == node;
}

EntangledPairManager::EntangledPairManager(QuantumRegister &reg, QubitOwnership &owners, std::set<NodeId> nodes)
    : reg_(reg), owners_(owners), nodes_(std::move(nodes)) {}

void EntangledPairManager::require_node(const NodeId &n) const {
    if (nodes_.count(n) == 0) {
        throw Error(Errc::UnknownNode, "EPM does not know node '" + n.str() + "'");
    }
}

EprId EntangledPairManager::create_epr(const NodeId &src, const NodeId &dest) {
    require_node(src);
    require_node(dest);
    if (src == dest) {
        throw Error(Errc::SameNode, "cannot create an entangled pair from '" + src.str() + "' to itself");
    }
    auto [qa, qb] = make_bell_pair(reg_);
    owners_.assign(qa, src);
    owners_.assign(qb, dest);
    const EprId id{records_.size()};
    records_.push_back({id, src, dest, qa, qb, EprStatus::Available});
    if (on_create_) {
        on_create_(records_.back());
    }
    return id;
}

std::pair<EprId, QubitId> EntangledPairManager::take_epr(const NodeId &local, const NodeId &next_hop) {
    require_node(local);
    require_node(next_hop);
    if (local == next_hop) {
        throw Error(Errc::SameNode, "'" + local.str() + "' cannot take a pair with itself");
    }
    EprRecord *chosen = nullptr;
    for (EprRecord &r : records_) {
        if (r.status == EprStatus::Available && r.connects(local, next_hop)) {
            chosen = &r;
            break;
        }
    }
    if (chosen == nullptr) {
        chosen = &records_[create_epr(local, next_hop).value];
    }
    chosen->status = EprStatus::Consumed;
    return {chosen->id, chosen->node_a == local ? chosen->qubit_a : chosen->qubit_b};
}

const EprRecord &EntangledPairManager::record(EprId id) const {
    if (id.value >= records_.size()) {
        throw Error(Errc::UnknownEpr, "no entangled pair with id " + std::to_string(id.value));
    }
    return records_[id.value];
}

QubitId EntangledPairManager::lookup_remote_half(EprId id, const NodeId &holder) const {
    const EprRecord &r = record(id);
    if (r.node_a == holder) {
        return r.qubit_a;
    }
    if (r.node_b == holder) {
        return r.qubit_b;
    }
    throw Error(Errc::NotEndpoint,
                "'" + holder.str() + "' is not an endpoint of entangled pair " + std::to_string(id.value));
}

std::size_t EntangledPairManager::available_between(const NodeId &a, const NodeId &b) const {
    std::size_t count = 0;
    for (const EprRecord &r : records_) {
        if (r.status == EprStatus::Available && r.connects(a, b)) {
            ++count;
        }
    }
    return count;
}

}  // namespace qrouter
