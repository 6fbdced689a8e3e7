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

#include <array>
#include <vector>

#include "pagen/network.hpp"

namespace pagen::testing {

// The ten-node example network: seed edge 1->2 plus nine weighted edges.
inline InitialNetworkSpec ten_node_spec() {
    InitialNetworkSpec s;
    s.edgelist = {{1, 2}, {3, 2}, {1, 4}, {5, 1}, {6, 4}, {7, 1}, {8, 3}, {9, 2}, {10, 4}};
    s.edgeweight = std::vector<double>{1, 2, 1, 2, 3, 2, 1, 2, 1};
    return s;
}

struct TenNodeRow {
    double outs, ins, spref, tpref, eta1, eta2;
};

// Node attributes under f1 = x + 1, f2 = y + 1, with subtree totals.
inline constexpr std::array<TenNodeRow, 10> kTenNode = {{
    {2, 4, 3, 5, 25, 25},
    {0, 5, 1, 6, 12, 16},
    {2, 1, 3, 2, 10, 4},
    {0, 5, 1, 6, 6, 8},
    {2, 0, 3, 1, 5, 2},
    {3, 0, 4, 1, 4, 1},
    {2, 0, 3, 1, 3, 1},
    {1, 0, 2, 1, 2, 1},
    {2, 0, 3, 1, 3, 1},
    {1, 0, 2, 1, 2, 1},
}};

inline std::vector<double> ten_node_column(double TenNodeRow::*field) {
    std::vector<double> out;
    for (const auto& r : kTenNode) out.push_back(r.*field);
    return out;
}

}  // namespace pagen::testing
