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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qrouter/netsim.hpp"

namespace qrouter {

/// Parses a topology document:
///
///   {"nodes": ["A", "B"],
///    "links": [{"a": "A", "b": "B", "metric": 1}],
///    "tables": {"A": [{"destination": "B", "interface": "B", "metric": 1}]},
///    "reserve": [{"a": "A", "b": "B", "count": 2}]}
///
/// "tables" and "reserve" are optional. Unknown keys are rejected. Errors are
/// InvalidTopology with the offending line or field path in the message.
NetworkConfig parse_network_config(std::string_view text);
NetworkConfig load_network_config(const std::string &path);
std::string serialize_network_config(const NetworkConfig &config);

/// Summary of one flow of a finished run.
struct RunReport {
    std::uint64_t seed = 0;
    NodeId source;
    NodeId dest;
    double terminal_fidelity = 0.0;
    std::size_t hop_count = 0;
    std::vector<std::uint64_t> ep_ids_used;
    std::vector<int> bsm_results;
    std::vector<HopRecord> hops;
    std::string terminal_state;
    std::vector<std::string> warnings;
    Trace trace;
};

RunReport make_report(const RunResult &result, std::uint64_t seed, std::size_t flow = 0);
std::string report_json(const RunReport &report);

/// Command-line entry point. Returns the process exit code: 0 on success,
/// 1 for input or simulation errors, 2 for bad flags.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qrouter
