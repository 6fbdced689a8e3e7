// Copyright 2026 The pagen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pagen/network.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "pagen/errors.hpp"

namespace pagen {

void Network::accumulate(const EdgeRecord& e) {
    auto& src = nodes[e.source];
    auto& tgt = nodes[e.target];
    if (directed) {
        src.out_strength += e.weight;
        tgt.in_strength += e.weight;
        return;
    }
    src.out_strength += e.weight;
    tgt.out_strength += e.weight;
    src.in_strength = src.out_strength;
    tgt.in_strength = tgt.out_strength;
}

Network build_initial_network(const InitialNetworkSpec& spec, int group_count) {
    if (spec.edgelist.empty()) throw ConfigError("initial edge list is empty", "/initial/edgelist");
    if (spec.edgeweight && spec.edgeweight->size() != spec.edgelist.size()) {
        throw ConfigError("edgeweight length " + std::to_string(spec.edgeweight->size()) +
                              " does not match edgelist length " + std::to_string(spec.edgelist.size()),
                          "/initial/edgeweight");
    }

    Network net;
    net.directed = spec.directed;
    net.has_groups = group_count > 0;

    std::unordered_map<std::int64_t, NodeId> index;
    auto enumerate = [&](std::int64_t label, std::size_t row) {
        if (label <= 0) {
            throw ConfigError("node label " + std::to_string(label) + " is not a positive integer",
                              "/initial/edgelist/" + std::to_string(row));
        }
        auto [it, inserted] = index.try_emplace(label, static_cast<NodeId>(net.nodes.size()));
        if (inserted) net.nodes.emplace_back();
        return it->second;
    };

    net.edges.reserve(spec.edgelist.size());
    for (std::size_t i = 0; i < spec.edgelist.size(); ++i) {
        const auto [a, b] = spec.edgelist[i];
        const NodeId s = enumerate(a, i);
        const NodeId t = enumerate(b, i);
        const double w = spec.edgeweight ? (*spec.edgeweight)[i] : 1.0;
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ConfigError("edge weight must be a positive finite number", "/initial/edgeweight/" + std::to_string(i));
        }
        EdgeRecord e{s, t, w, ScenarioCode::initial};
        net.edges.push_back(e);
        net.accumulate(e);
    }

    if (spec.nodegroup) {
        const auto& groups = *spec.nodegroup;
        if (groups.size() != net.nodes.size()) {
            throw ConfigError("nodegroup has " + std::to_string(groups.size()) + " entries for " +
                                  std::to_string(net.nodes.size()) + " nodes",
                              "/initial/nodegroup");
        }
        const int k = group_count > 0 ? group_count : 1;
        for (std::size_t j = 0; j < groups.size(); ++j) {
            if (groups[j] < 1 || groups[j] > k) {
                throw ConfigError("group " + std::to_string(groups[j]) + " outside 1.." + std::to_string(k),
                                  "/initial/nodegroup/" + std::to_string(j));
            }
            net.nodes[j].group = groups[j];
        }
    } else if (net.has_groups) {
        for (auto& n : net.nodes) n.group = 1;
    }

    net.initial_edges = net.edges.size();
    net.initial_nodes = net.nodes.size();
    return net;
}

Strengths recompute_strengths(const Network& network) {
    Strengths s;
    s.out.assign(network.nodes.size(), 0.0);
    s.in.assign(network.nodes.size(), 0.0);
    for (const auto& e : network.edges) {
        if (network.directed) {
            s.out[e.source] += e.weight;
            s.in[e.target] += e.weight;
        } else {
            s.out[e.source] += e.weight;
            s.out[e.target] += e.weight;
        }
    }
    if (!network.directed) s.in = s.out;
    return s;
}

}  // namespace pagen
