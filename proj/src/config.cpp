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

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qrouter/cli.hpp"
#include "qrouter/error.hpp"

namespace qrouter {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(Errc::InvalidTopology, "field '" + path + "': " + what);
}

void check_keys(const json &obj, const std::string &path, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (auto k : required) known = known || it.key() == k;
        for (auto k : optional) known = known || it.key() == k;
        if (!known) {
            fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
        }
    }
    for (auto k : required) {
        if (!obj.contains(std::string(k))) {
            fail(path.empty() ? std::string(k) : path + "." + std::string(k), "missing");
        }
    }
}

NodeId node_field(const json &obj, const std::string &path) {
    if (!obj.is_string() || obj.get<std::string>().empty()) {
        fail(path, "expected a non-empty node name");
    }
    return NodeId(obj.get<std::string>());
}

std::int64_t int_field(const json &obj, const std::string &path, std::int64_t min) {
    if (!obj.is_number_integer()) {
        fail(path, "expected an integer");
    }
    const auto v = obj.get<std::int64_t>();
    if (v < min) {
        fail(path, "must be >= " + std::to_string(min));
    }
    return v;
}

void require_node(const std::set<NodeId> &nodes, const NodeId &n, const std::string &path) {
    if (nodes.count(n) == 0) {
        fail(path, "unknown node '" + n.str() + "'");
    }
}

}  // namespace

NetworkConfig parse_network_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(Errc::InvalidTopology, std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "", {"nodes", "links"}, {"tables", "reserve"});

    NetworkConfig config;
    std::set<NodeId> nodes;
    if (!doc["nodes"].is_array()) {
        fail("nodes", "expected an array");
    }
    for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        NodeId n = node_field(doc["nodes"][i], path);
        if (!nodes.insert(n).second) {
            fail(path, "duplicate node '" + n.str() + "'");
        }
        config.topology.nodes.push_back(std::move(n));
    }

    if (!doc["links"].is_array()) {
        fail("links", "expected an array");
    }
    for (std::size_t i = 0; i < doc["links"].size(); ++i) {
        const std::string path = "links[" + std::to_string(i) + "]";
        const json &l = doc["links"][i];
        check_keys(l, path, {"a", "b", "metric"});
        Link link{node_field(l["a"], path + ".a"), node_field(l["b"], path + ".b"),
                  int_field(l["metric"], path + ".metric", 1)};
        require_node(nodes, link.a, path + ".a");
        require_node(nodes, link.b, path + ".b");
        config.topology.links.push_back(std::move(link));
    }
    try {
        config.topology.validate();
    } catch (const Error &e) {
        fail("links", e.what());
    }

    if (doc.contains("tables")) {
        const json &tables = doc["tables"];
        if (!tables.is_object()) {
            fail("tables", "expected an object keyed by node");
        }
        for (auto it = tables.begin(); it != tables.end(); ++it) {
            const std::string path = "tables." + it.key();
            const NodeId owner = node_field(json(it.key()), path);
            require_node(nodes, owner, path);
            if (!it.value().is_array()) {
                fail(path, "expected an array of entries");
            }
            auto &entries = config.tables[owner];
            for (std::size_t i = 0; i < it.value().size(); ++i) {
                const std::string epath = path + "[" + std::to_string(i) + "]";
                const json &e = it.value()[i];
                check_keys(e, epath, {"destination", "interface", "metric"});
                ForwardingEntry entry{node_field(e["destination"], epath + ".destination"),
                                      node_field(e["interface"], epath + ".interface"),
                                      int_field(e["metric"], epath + ".metric", 1)};
                require_node(nodes, entry.destination, epath + ".destination");
                if (!config.topology.adjacent(owner, entry.interface)) {
                    fail(epath + ".interface", "'" + entry.interface.str() + "' is not a neighbor of '" + owner.str() + "'");
                }
                entries.push_back(std::move(entry));
            }
            try {
                ForwardingTable check(owner);
                for (const auto &e : entries) check.add(e);
            } catch (const Error &e) {
                fail(path, e.what());
            }
        }
    }

    if (doc.contains("reserve")) {
        const json &reserve = doc["reserve"];
        if (!reserve.is_array()) {
            fail("reserve", "expected an array");
        }
        for (std::size_t i = 0; i < reserve.size(); ++i) {
            const std::string path = "reserve[" + std::to_string(i) + "]";
            const json &r = reserve[i];
            check_keys(r, path, {"a", "b", "count"});
            ReserveSpec spec{node_field(r["a"], path + ".a"), node_field(r["b"], path + ".b"),
                             static_cast<std::size_t>(int_field(r["count"], path + ".count", 0))};
            require_node(nodes, spec.a, path + ".a");
            require_node(nodes, spec.b, path + ".b");
            if (spec.a == spec.b) {
                fail(path, "reserve endpoints must differ");
            }
            config.reserve.push_back(std::move(spec));
        }
    }
    return config;
}

NetworkConfig load_network_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::InvalidTopology, "cannot read topology file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_network_config(buf.str());
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string serialize_network_config(const NetworkConfig &config) {
    json doc;
    doc["nodes"] = json::array();
    for (const NodeId &n : config.topology.nodes) {
        doc["nodes"].push_back(n.str());
    }
    doc["links"] = json::array();
    for (const Link &l : config.topology.links) {
        doc["links"].push_back({{"a", l.a.str()}, {"b", l.b.str()}, {"metric", l.metric}});
    }
    if (!config.tables.empty()) {
        json &tables = doc["tables"];
        tables = json::object();
        for (const auto &[owner, entries] : config.tables) {
            json list = json::array();
            for (const ForwardingEntry &e : entries) {
                list.push_back(
                    {{"destination", e.destination.str()}, {"interface", e.interface.str()}, {"metric", e.metric}});
            }
            tables[owner.str()] = std::move(list);
        }
    }
    if (!config.reserve.empty()) {
        doc["reserve"] = json::array();
        for (const ReserveSpec &r : config.reserve) {
            doc["reserve"].push_back({{"a", r.a.str()}, {"b", r.b.str()}, {"count", r.count}});
        }
    }
    return doc.dump(2) + "\n";
}

}  // namespace qrouter
