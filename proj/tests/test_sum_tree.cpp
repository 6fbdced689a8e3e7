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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"

using namespace pagen;
using testing::kTenNode;

namespace {

SumTree fig3_tree() {
    SumTree t;
    for (const auto& r : kTenNode) t.push_back(r.spref, r.tpref);
    return t;
}

}  // namespace

TEST_CASE("subtree totals of the ten-node example") {
    const auto t = fig3_tree();
    REQUIRE(t.size() == 10);
    for (NodeId j = 0; j < 10; ++j) {
        CAPTURE(j + 1);
        CHECK(t.theta(Side::source, j) == kTenNode[j].spref);
        CHECK(t.theta(Side::target, j) == kTenNode[j].tpref);
        CHECK(t.eta(Side::source, j) == kTenNode[j].eta1);
        CHECK(t.eta(Side::target, j) == kTenNode[j].eta2);
    }
    CHECK(t.total(Side::source) == 25.0);
    CHECK(t.total(Side::target) == 25.0);
    CHECK(t.check_invariant());
}

TEST_CASE("hand traces") {
    const auto t = fig3_tree();
    CHECK(t.sample(Side::target, 3.0) == 0);
    CHECK(t.sample(Side::target, 10.0) == 1);
    const NodeId last = t.sample(Side::source, 25.0);
    CHECK(last < 10);
}

TEST_CASE("unit cells map to nodes in proportion to their scores") {
    // Integer scores: every unit interval (k-1, k] belongs to one node, so
    // counting midpoints gives each node's score exactly.
    const auto t = fig3_tree();
    for (Side side : {Side::source, Side::target}) {
        std::vector<int> hits(10, 0);
        for (int k = 1; k <= 25; ++k) hits[t.sample(side, k - 0.5)]++;
        for (int k = 1; k <= 25; ++k) CHECK(t.sample(side, k) == t.sample(side, k - 0.5));
        for (NodeId j = 0; j < 10; ++j) CHECK(hits[j] == t.theta(side, j));
    }
}

TEST_CASE("update touches only the root path") {
    auto t = fig3_tree();
    t.update(5, 5.0, kTenNode[5].tpref);
    CHECK(t.eta(Side::source, 2) == 11.0);
    CHECK(t.eta(Side::source, 0) == 26.0);
    for (NodeId j = 0; j < 10; ++j) {
        if (j == 0 || j == 2 || j == 5) continue;
        CHECK(t.eta(Side::source, j) == kTenNode[j].eta1);
    }
    for (NodeId j = 0; j < 10; ++j) CHECK(t.eta(Side::target, j) == kTenNode[j].eta2);
    CHECK(t.eta(Side::source, 5) == 5.0);
    CHECK(t.check_invariant());
}

TEST_CASE("identity and root updates") {
    auto t = fig3_tree();
    t.update(3, kTenNode[3].spref, kTenNode[3].tpref);
    for (NodeId j = 0; j < 10; ++j) CHECK(t.eta(Side::source, j) == kTenNode[j].eta1);

    t.update(0, kTenNode[0].spref + 1, kTenNode[0].tpref);
    CHECK(t.eta(Side::source, 0) == 26.0);
    for (NodeId j = 1; j < 10; ++j) CHECK(t.eta(Side::source, j) == kTenNode[j].eta1);
}

TEST_CASE("bulk assign matches incremental construction") {
    const auto a = fig3_tree();
    SumTree b;
    const auto sp = testing::ten_node_column(&testing::TenNodeRow::spref);
    const auto tp = testing::ten_node_column(&testing::TenNodeRow::tpref);
    b.assign(sp, tp);
    for (NodeId j = 0; j < 10; ++j) {
        CHECK(b.eta(Side::source, j) == a.eta(Side::source, j));
        CHECK(b.eta(Side::target, j) == a.eta(Side::target, j));
    }
}

TEST_CASE("invariant survives random updates and draws") {
    Rng rng(3);
    SumTree t;
    for (int i = 0; i < 257; ++i) t.push_back(rng.uniform() * 5, rng.uniform() * 5);
    for (int it = 0; it < 10000; ++it) {
        const double r = rng.uniform();
        if (r < 0.1) {
            t.push_back(rng.uniform() * 5, rng.uniform() < 0.1 ? 0.0 : rng.uniform() * 5);
        } else if (r < 0.6) {
            const auto j = static_cast<NodeId>(rng.below(t.size()));
            t.update(j, rng.uniform() < 0.05 ? 0.0 : rng.uniform() * 100, rng.uniform() * 3);
        } else {
            const Side side = r < 0.8 ? Side::source : Side::target;
            const NodeId v = t.sample(side, rng.uniform_pos() * t.total(side));
            REQUIRE(v < t.size());
            CHECK(t.theta(side, v) > 0.0);
        }
        if (it % 500 == 0) REQUIRE(t.check_invariant());
    }
    CHECK(t.check_invariant());
    double s = 0;
    for (NodeId j = 0; j < t.size(); ++j) s += t.theta(Side::source, j);
    CHECK(t.total(Side::source) == doctest::Approx(s).epsilon(1e-6));
}

TEST_CASE("draws visit a logarithmic number of slots") {
    Rng rng(5);
    for (std::size_t n : {1u, 2u, 10u, 1000u, 65535u, 65536u, 100000u}) {
        SumTree t;
        for (std::size_t i = 0; i < n; ++i) t.push_back(rng.uniform() + 0.01, 1.0);
        const auto bound = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n) + 1))) + 1;
        for (int k = 0; k < 2000; ++k) {
            t.sample(Side::source, rng.uniform_pos() * t.total(Side::source));
            REQUIRE(t.last_visits() <= bound);
        }
    }
}
