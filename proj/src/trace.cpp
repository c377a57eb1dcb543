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

#include "qrouter/trace.hpp"

#include <algorithm>

namespace qrouter {

std::vector<TraceEntry> Trace::for_flow(std::uint64_t flow) const {
    std::vector<TraceEntry> out;
    std::copy_if(entries_.begin(), entries_.end(), std::back_inserter(out),
                 [&](const TraceEntry &e) { return e.flow == flow; });
    return out;
}

std::string Trace::render(bool include_epm) const {
    std::vector<NodeId> order;
    for (const TraceEntry &e : entries_) {
        if (e.kind == TraceKind::Epm && !include_epm) {
            continue;
        }
        if (std::find(order.begin(), order.end(), e.node) == order.end()) {
            order.push_back(e.node);
        }
    }
    std::string out;
    for (const NodeId &node : order) {
        if (!out.empty()) {
            out += "\n";
        }
        out += node.str() + "\n";
        for (const TraceEntry &e : entries_) {
            if (e.node == node && (include_epm || e.kind != TraceKind::Epm)) {
                out += e.line + "\n";
            }
        }
    }
    return out;
}

}  // namespace qrouter
