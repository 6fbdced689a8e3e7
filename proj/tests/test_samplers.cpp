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

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "fixtures.hpp"
#include "pagen/errors.hpp"
#include "pagen/network.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"
#include "pagen/stats.hpp"

using namespace pagen;
using testing::kTenNode;

namespace {

// Loads a network into a fresh engine with scores strength + 1 on each side.
std::unique_ptr<NodeSampler> load(Method method, const Network& net) {
    auto s = make_sampler(method, net.directed, LinearForm{1.0, 1.0});
    for (const auto& n : net.nodes) s->add_node(n.out_strength + 1.0, n.in_strength + 1.0);
    for (const auto& e : net.edges) s->add_edge(e);
    return s;
}

std::vector<double> scores(const Network& net, Side side) {
    std::vector<double> out;
    for (const auto& n : net.nodes) out.push_back((side == Side::source ? n.out_strength : n.in_strength) + 1.0);
    return out;
}

Network unit_weight_ten_node() {
    auto spec = testing::ten_node_spec();
    spec.edgeweight.reset();
    return build_initial_network(spec);
}

}  // namespace

TEST_CASE("method names") {
    for (Method m : {Method::binary, Method::linear, Method::bagx, Method::bag}) CHECK(parse_method(to_string(m)) == m);
    CHECK_FALSE(parse_method("tree"));
}

TEST_CASE("linear engine hand trace") {
    LinearSampler s;
    for (const auto& r : kTenNode) s.add_node(r.spref, r.tpref);
    CHECK(s.locate(Side::source, 3.5) == 1);
    CHECK(s.locate(Side::source, 3.0) == 0);
    CHECK(s.locate(Side::source, 4.0) == 1);
    CHECK(s.locate(Side::source, 25.0) == 9);
    CHECK(s.total(Side::source) == 25.0);

    LinearSampler one;
    one.add_node(2.0, 0.5);
    Rng rng(1);
    for (int i = 0; i < 10; ++i) CHECK(one.sample(Side::source, rng) == 0);
    CHECK(one.locate(Side::target, 0.5) == 0);
}

TEST_CASE("linear engine moves drawn nodes forward") {
    LinearSampler s;
    s.add_node(1, 1);
    s.add_node(1, 1);
    s.add_node(100, 1);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) s.sample(Side::source, rng);
    CHECK(s.visit_order(Side::source)[0] == 2);
    CHECK(s.visit_order(Side::target).size() == 3);

    auto order = std::vector<NodeId>(s.visit_order(Side::source).begin(), s.visit_order(Side::source).end());
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<NodeId>{0, 1, 2});

    // The update lands on the node, not on its old position.
    s.update(2, 0.0, 1.0);
    CHECK(s.total(Side::source) == 2.0);
    for (int i = 0; i < 50; ++i) CHECK(s.sample(Side::source, rng) != 2);
}

TEST_CASE("bag engine two-node law") {
    InitialNetworkSpec spec;  // single edge 1 -> 2
    const auto net = build_initial_network(spec);
    BagSampler s(LinearForm{1.0, 1.0}, true);
    s.add_node(0, 0);
    s.add_node(0, 0);
    s.add_edge(net.edges[0]);
    REQUIRE(s.total(Side::source) == 3.0);
    const int cells = 3000;
    int first = 0;
    for (int k = 0; k < cells; ++k) first += s.locate(Side::source, 3.0 * (k + 0.5) / cells) == 0;
    CHECK(first == 2000);

    BagSampler pure(LinearForm{0.0, 0.0}, true);
    pure.add_node(0, 0);
    pure.add_node(0, 0);
    pure.add_edge(net.edges[0]);
    CHECK(pure.total(Side::source) == 1.0);
    CHECK(pure.candidate_count(Side::source) == 1);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) CHECK(pure.sample(Side::source, rng) == 0);

    BagSampler empty(LinearForm{1.0, 1.0}, true);
    for (int i = 0; i < 4; ++i) empty.add_node(0, 0);
    for (int k = 0; k < 4; ++k) CHECK(empty.locate(Side::target, k + 0.5) == static_cast<NodeId>(k));
}

TEST_CASE("bag engine rejects weighted edges") {
    BagSampler s(LinearForm{1.0, 1.0}, true);
    s.add_node(0, 0);
    CHECK_THROWS_AS(s.add_edge(EdgeRecord{0, 0, 2.0, ScenarioCode::initial}), ConfigError);
}

TEST_CASE("bagx hand traces on the weighted two-edge seed") {
    InitialNetworkSpec spec;
    spec.edgelist = {{1, 2}, {3, 4}};
    spec.edgeweight = std::vector<double>{0.5, 2.0};
    const auto net = build_initial_network(spec);
    BagxSampler s(LinearForm{1.0, 1.0}, true);
    for (int i = 0; i < 4; ++i) s.add_node(0, 0);
    for (const auto& e : net.edges) s.add_edge(e);

    const std::vector<double> nu(s.cumulative().begin(), s.cumulative().end());
    CHECK(nu == std::vector<double>{0.0, 0.5, 2.5});
    CHECK(s.total(Side::source) == 6.5);

    // tau = 3.0 lies beyond W = 2.5: the uniform branch, one unit per node.
    CHECK(s.locate(Side::source, 3.0) == 0);
    for (int k = 0; k < 4; ++k) CHECK(s.locate(Side::source, 2.5 + k + 0.5) == static_cast<NodeId>(k));
    CHECK(s.locate(Side::source, 1.0) == 2);
    CHECK(s.locate(Side::target, 1.0) == 3);
    CHECK(s.locate(Side::source, 0.5) == 0);
    CHECK(s.locate(Side::source, 0.25) == 0);
    CHECK(s.locate(Side::source, 0.5000001) == 2);
}

TEST_CASE("bagx undirected uses both endpoints") {
    InitialNetworkSpec spec;
    spec.edgelist = {{1, 2}};
    spec.edgeweight = std::vector<double>{2.0};
    spec.directed = false;
    const auto net = build_initial_network(spec);
    BagxSampler s(LinearForm{0.0, 0.0}, false);
    s.add_node(0, 0);
    s.add_node(0, 0);
    s.add_edge(net.edges[0]);
    CHECK(s.total(Side::source) == 4.0);
    CHECK(s.locate(Side::source, 1.0) == 0);
    CHECK(s.locate(Side::source, 3.0) == 1);
}

TEST_CASE("every engine follows the preference law on the ten-node state") {
    const auto weighted = build_initial_network(testing::ten_node_spec());
    const auto unit = unit_weight_ten_node();
    struct Case {
        Method method;
        const Network* net;
    };
    const Case cases[] = {{Method::binary, &weighted},
                          {Method::linear, &weighted},
                          {Method::bagx, &weighted},
                          {Method::bag, &unit}};
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        for (Side side : {Side::source, Side::target}) {
            auto s = load(c.method, *c.net);
            const auto w = scores(*c.net, side);
            Rng rng(++seed);
            const auto fit = stats::empirical_sampler_distribution(*s, side, w, 100000, rng);
            CAPTURE(to_string(c.method));
            CAPTURE(static_cast<int>(side));
            CHECK(fit.p_value > 0.001);
            CHECK(fit.dof == 9);
        }
    }
}

TEST_CASE("binary engine target draws of node 1 near 5/25") {
    const auto net = build_initial_network(testing::ten_node_spec());
    auto s = load(Method::binary, net);
    Rng rng(17);
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += s->sample(Side::target, rng) == 0;
    const double p = 0.2;
    CHECK(std::fabs(hits / double(n) - p) <= 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("uniform and single-node states") {
    for (Method m : {Method::binary, Method::linear}) {
        auto s = make_sampler(m, true);
        for (int i = 0; i < 4; ++i) s->add_node(1.0, 1.0);
        Rng rng(23);
        const int n = 100000;
        std::vector<int> hits(4, 0);
        for (int i = 0; i < n; ++i) hits[s->sample(Side::source, rng)]++;
        for (int h : hits) CHECK(std::fabs(h / double(n) - 0.25) <= 3 * std::sqrt(0.25 * 0.75 / n));

        auto one = make_sampler(m, true);
        one->add_node(3.0, 3.0);
        for (int i = 0; i < 100; ++i) CHECK(one->sample(Side::target, rng) == 0);
    }
}

TEST_CASE("contract errors") {
    for (Method m : {Method::binary, Method::linear}) {
        auto s = make_sampler(m, true);
        CHECK_THROWS_AS(s->add_node(-1.0, 1.0), NegativePreferenceError);
        s->add_node(0.0, 1.0);
        Rng rng(1);
        CHECK_THROWS_AS(s->sample(Side::source, rng), NoCandidateError);
        CHECK(s->candidate_count(Side::source) == 0);
        CHECK(s->candidate_count(Side::target) == 1);
        CHECK_THROWS_AS(s->update(0, 1.0, -0.5), NegativePreferenceError);

        s->freeze();
        CHECK_THROWS_AS(s->update(0, 1.0, 1.0), std::logic_error);
        CHECK_THROWS_AS(s->add_node(1.0, 1.0), std::logic_error);
        s->thaw();
        s->update(0, 1.0, 1.0);
        CHECK(s->update_count() == 1);
        CHECK(s->sample(Side::source, rng) == 0);
    }
    CHECK_THROWS_AS(make_sampler(Method::bag, true), ConfigError);
    CHECK_THROWS_AS(make_sampler(Method::bagx, true), ConfigError);
}
