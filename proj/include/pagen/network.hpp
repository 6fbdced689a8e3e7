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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pagen {

/// Internal node index, 0-based. Files and user input use 1-based labels.
using NodeId = std::uint32_t;

enum class ScenarioCode : std::uint8_t {
    initial = 0,
    alpha = 1,       // new node -> existing node
    beta = 2,        // existing -> existing
    gamma = 3,       // existing -> new node
    xi = 4,          // new -> new
    rho = 5,         // new node with a self-loop
    reciprocal = 6,
};

inline constexpr int to_int(ScenarioCode c) noexcept { return static_cast<int>(c); }

struct EdgeRecord {
    NodeId source = 0;
    NodeId target = 0;
    double weight = 1.0;
    ScenarioCode scenario = ScenarioCode::initial;

    bool is_loop() const noexcept { return source == target; }
    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct NodeRecord {
    double out_strength = 0.0;
    double in_strength = 0.0;
    double source_pref = 0.0;
    double target_pref = 0.0;
    int group = 0;  // 1..K when reciprocity is configured, 0 otherwise

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

/// A weighted PA network as produced by the generator. For undirected
/// networks `out_strength` holds the strength s and `in_strength` mirrors it.
struct Network {
    bool directed = true;
    std::vector<EdgeRecord> edges;
    std::vector<NodeRecord> nodes;
    std::vector<std::uint32_t> new_edge_counts;  // one entry per step
    std::size_t initial_edges = 0;
    std::size_t initial_nodes = 0;
    bool has_groups = false;

    std::size_t node_count() const noexcept { return nodes.size(); }
    std::size_t edge_count() const noexcept { return edges.size(); }

    /// Adds `weight` to the strengths of the endpoints. Self-loops add the
    /// weight to both sides (directed) or twice to s (undirected).
    void accumulate(const EdgeRecord& e);
};

/// Input form of an initial network. Labels are arbitrary positive integers;
/// nodes are enumerated in order of first appearance in `edgelist`.
struct InitialNetworkSpec {
    std::vector<std::pair<std::int64_t, std::int64_t>> edgelist{{1, 2}};
    std::optional<std::vector<double>> edgeweight;
    bool directed = true;
    /// Group per enumerated node, 1-based, in enumeration order.
    std::optional<std::vector<int>> nodegroup;
};

/// Builds the seed network: strengths accumulated, scenario codes 0, groups
/// from `nodegroup` or 1. `group_count` bounds group labels (0 = no groups).
/// Preference scores are left at zero; the generator fills them in.
Network build_initial_network(const InitialNetworkSpec& spec, int group_count = 0);

struct Strengths {
    std::vector<double> out;
    std::vector<double> in;
};

/// Strengths from scratch by summing edge weights.
Strengths recompute_strengths(const Network& network);

}  // namespace pagen
