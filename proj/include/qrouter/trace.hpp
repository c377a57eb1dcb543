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
#include <string>
#include <vector>

#include "qrouter/routing.hpp"

namespace qrouter {

enum class TraceKind { Protocol, Epm };

struct TraceEntry {
    NodeId node;
    std::string line;
    TraceKind kind = TraceKind::Protocol;
    std::uint64_t flow = 0;

    friend bool operator==(const TraceEntry &, const TraceEntry &) = default;
};

/// Node-scoped log of protocol events in emission order.
class Trace {
  public:
    void append(TraceEntry entry) { entries_.push_back(std::move(entry)); }
    const std::vector<TraceEntry> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Entries of one flow, in order.
    std::vector<TraceEntry> for_flow(std::uint64_t flow) const;

    /// One block per node in first-activity order: the node name on its own
    /// line, then that node's lines. Blocks are separated by a blank line.
    /// EPM bookkeeping lines are left out unless `include_epm` is set.
    std::string render(bool include_epm = false) const;

  private:
    std::vector<TraceEntry> entries_;
};

}  // namespace qrouter
