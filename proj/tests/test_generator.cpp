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
#include <numeric>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "pagen/errors.hpp"
#include "pagen/generator.hpp"
#include "pagen/stats.hpp"

using namespace pagen;

namespace {

bool creates_source(ScenarioCode c) {
    return c == ScenarioCode::alpha || c == ScenarioCode::xi || c == ScenarioCode::rho;
}
bool creates_target(ScenarioCode c) { return c == ScenarioCode::gamma || c == ScenarioCode::xi; }

// Replays the edge list step by step and checks the counting identities and
// that drawn endpoints existed before their step began.
void check_growth(const Network& net) {
    REQUIRE(net.edges.size() ==
            net.initial_edges + std::accumulate(net.new_edge_counts.begin(), net.new_edge_counts.end(), std::size_t{0}));
    std::size_t nodes = net.initial_nodes;
    std::size_t e = net.initial_edges;
    for (std::uint32_t count : net.new_edge_counts) {
        const std::size_t before = nodes;
        for (std::uint32_t k = 0; k < count; ++k, ++e) {
            const auto& edge = net.edges[e];
            const auto c = edge.scenario;
            if (c == ScenarioCode::reciprocal) {
                REQUIRE(k > 0);
                const auto& prev = net.edges[e - 1];
                CHECK(edge.source == prev.target);
                CHECK(edge.target == prev.source);
                continue;
            }
            if (creates_source(c)) {
                CHECK(edge.source == nodes);
                ++nodes;
            } else {
                CHECK(edge.source < before);
            }
            if (c == ScenarioCode::rho) {
                CHECK(edge.target == edge.source);
            } else if (creates_target(c)) {
                CHECK(edge.target == nodes);
                ++nodes;
            } else {
                CHECK(edge.target < before);
            }
        }
    }
    CHECK(nodes == net.nodes.size());
}

GenerationConfig mixed_config(Method m) {
    GenerationConfig c;
    c.method = m;
    c.seed = 77;
    c.scenario = {0.3, 0.3, 0.2, 0.1, 0.1, true, true};
    c.newedge.sampler = DistributionSpec::poisson_plus_one(1.5);
    if (m != Method::bag) c.edgeweight = DistributionSpec::gamma(5, 0.2);
    return c;
}

}  // namespace

TEST_CASE("counting identities for single-edge growth") {
    const auto net = generate(1000, build_initial_network(InitialNetworkSpec{}), GenerationConfig{});
    CHECK(net.edges.size() == 1001);
    CHECK(net.nodes.size() == 1002);
    check_growth(net);

    InitialNetworkSpec two;
    two.edgelist = {{1, 2}, {3, 4}};
    two.edgeweight = std::vector<double>{0.5, 2.0};
    GenerationConfig c;
    c.scenario = {0.2, 0.6, 0.2, 0, 0, true, true};
    c.seed = 3;
    const auto net2 = generate(1000, build_initial_network(two), c);
    CHECK(net2.edges.size() == 1002);
    CHECK(net2.edges[0].weight == 0.5);
    CHECK(net2.edges[1].weight == 2.0);
    check_growth(net2);
}

TEST_CASE("zero steps leave the seed unchanged") {
    const auto seed = build_initial_network(testing::ten_node_spec());
    const auto net = generate(0, seed, GenerationConfig{});
    CHECK(net.edges == seed.edges);
    CHECK(net.new_edge_counts.empty());
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(net.nodes[j].out_strength == seed.nodes[j].out_strength);
        CHECK(net.nodes[j].source_pref == testing::kTenNode[j].spref);
        CHECK(net.nodes[j].target_pref == testing::kTenNode[j].tpref);
    }
}

TEST_CASE("the generator scores the ten-node seed exactly") {
    Generator g(build_initial_network(testing::ten_node_spec()), GenerationConfig{});
    const auto& tree = dynamic_cast<const BinarySampler&>(g.sampler()).tree();
    for (NodeId j = 0; j < 10; ++j) {
        CHECK(tree.eta(Side::source, j) == testing::kTenNode[j].eta1);
        CHECK(tree.eta(Side::target, j) == testing::kTenNode[j].eta2);
    }
}

TEST_CASE("every method keeps the node table consistent") {
    for (Method m : {Method::binary, Method::linear, Method::bagx, Method::bag}) {
        CAPTURE(to_string(m));
        const auto c = mixed_config(m);
        const auto net = generate(3000, build_initial_network(InitialNetworkSpec{}), c);
        check_growth(net);
        const auto report = stats::verify_node_attributes(net, c.preference);
        CHECK(report.pass);
        CHECK(report.max_strength_diff <= 1e-9);
    }
}

TEST_CASE("determinism") {
    const auto c = mixed_config(Method::binary);
    const auto seed = build_initial_network(InitialNetworkSpec{});
    const auto a = generate(2000, seed, c);
    const auto b = generate(2000, seed, c);
    CHECK(a.edges == b.edges);
    CHECK(a.nodes == b.nodes);
    auto other = c;
    other.seed = 78;
    CHECK_FALSE(generate(2000, seed, other).edges == a.edges);

    const auto one = generate_replicas(500, seed, c, 5, 1);
    const auto many = generate_replicas(500, seed, c, 5, 3);
    for (std::size_t r = 0; r < 5; ++r) {
        CHECK(one[r].edges == many[r].edges);
        CHECK(one[r].nodes == many[r].nodes);
    }
    CHECK_FALSE(one[0].edges == one[1].edges);
}

TEST_CASE("without-replacement steps never repeat a drawn node") {
    GenerationConfig c;
    c.seed = 5;
    c.scenario = {0.3, 0.4, 0.3, 0, 0, false, true};
    c.newedge.sampler = DistributionSpec::poisson_plus_one(2.0);
    c.newedge.snode_replace = false;
    c.newedge.tnode_replace = false;
    auto seed = testing::ten_node_spec();
    seed.edgeweight.reset();
    const auto net = generate(5000, build_initial_network(seed), c);
    check_growth(net);
    std::size_t e = net.initial_edges;
    for (std::uint32_t count : net.new_edge_counts) {
        std::set<NodeId> sources, targets;
        for (std::uint32_t k = 0; k < count; ++k, ++e) {
            const auto& edge = net.edges[e];
            if (edge.scenario == ScenarioCode::beta || edge.scenario == ScenarioCode::gamma) {
                CHECK(sources.insert(edge.source).second);
            }
            if (edge.scenario == ScenarioCode::beta || edge.scenario == ScenarioCode::alpha) {
                CHECK(targets.insert(edge.target).second);
            }
            if (edge.scenario == ScenarioCode::beta) CHECK_FALSE(edge.is_loop());
        }
    }
}

TEST_CASE("infeasible exclusion hits the rejection limit") {
    InitialNetworkSpec loop;
    loop.edgelist = {{1, 1}};
    GenerationConfig c;
    c.scenario = {0.01, 0.99, 0, 0, 0, false, true};
    c.seed = 1;
    CHECK_THROWS_AS(generate(5, build_initial_network(loop), c), RejectionLimitError);
}

TEST_CASE("sample_distinct") {
    const auto net = build_initial_network(testing::ten_node_spec());
    Generator g(net, GenerationConfig{});
    auto sampler = make_sampler(Method::binary, true);
    for (const auto& n : g.network().nodes) sampler->add_node(n.source_pref, n.target_pref);
    sampler->freeze();
    Rng rng(12);

    const auto all = sample_distinct(*sampler, Side::target, 10, rng);
    std::set<NodeId> unique(all.begin(), all.end());
    CHECK(unique.size() == 10);
    CHECK_THROWS_AS(sample_distinct(*sampler, Side::target, 11, rng), NoCandidateError);

    const int trials = 100000;
    int first_v1 = 0, pair12 = 0;
    for (int t = 0; t < trials; ++t) {
        const auto p = sample_distinct(*sampler, Side::target, 2, rng);
        REQUIRE(p[0] != p[1]);
        first_v1 += p[0] == 0;
        pair12 += (std::min(p[0], p[1]) == 0 && std::max(p[0], p[1]) == 1);
    }
    // Second draw conditional on the first renormalizes over the rest.
    const double p_first = 5.0 / 25.0;
    const double p_pair = (5.0 / 25.0) * (6.0 / 20.0) + (6.0 / 25.0) * (5.0 / 19.0);
    auto band = [&](double p) { return 3 * std::sqrt(p * (1 - p) / trials); };
    CHECK(std::fabs(first_v1 / double(trials) - p_first) <= band(p_first));
    CHECK(std::fabs(pair12 / double(trials) - p_pair) <= band(p_pair));

    const auto single = sample_distinct(*sampler, Side::source, 1, rng);
    CHECK(single.size() == 1);
}

TEST_CASE("independent draws make self-loops at the product rate") {
    const auto net = build_initial_network(testing::ten_node_spec());
    Generator g(net, GenerationConfig{});
    auto s = make_sampler(Method::binary, true);
    for (const auto& n : g.network().nodes) s->add_node(n.source_pref, n.target_pref);
    Rng rng(31);
    const int n = 100000;
    int loops = 0;
    for (int i = 0; i < n; ++i) loops += s->sample(Side::source, rng) == 0 && s->sample(Side::target, rng) == 0;
    const double p = (3.0 / 25.0) * (5.0 / 25.0);
    CHECK(std::fabs(loops / double(n) - p) <= 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("reciprocal rate with one group") {
    GenerationConfig c;
    c.seed = 19;
    const double r = 0.3;
    c.reciprocal = ReciprocalConfig{{1.0}, {{r}}, false};
    const std::size_t n = 100000;
    const auto net = generate(n, build_initial_network(InitialNetworkSpec{}, 1), c);
    check_growth(net);
    std::size_t recips = 0;
    for (const auto& e : net.edges) recips += e.scenario == ScenarioCode::reciprocal;
    CHECK(std::fabs(recips / double(n) - r) <= 3 * std::sqrt(r * (1 - r) / n));
    CHECK(stats::verify_node_attributes(net, c.preference).pass);
    CHECK(net.has_groups);
}

TEST_CASE("deterministic reciprocal coins") {
    GenerationConfig c;
    c.seed = 4;
    c.scenario = {0.5, 0.2, 0.1, 0.1, 0.1, true, true};
    c.reciprocal = ReciprocalConfig{{1.0}, {{0.0}}, false};
    auto count = [](const Network& net, ScenarioCode code) {
        return std::count_if(net.edges.begin(), net.edges.end(), [&](const EdgeRecord& e) { return e.scenario == code; });
    };
    const auto seed = build_initial_network(InitialNetworkSpec{}, 1);
    CHECK(count(generate(2000, seed, c), ScenarioCode::reciprocal) == 0);

    c.reciprocal->recip_prob = {{1.0}};
    const auto all = generate(2000, seed, c);
    std::size_t non_loops = 0;
    for (const auto& e : all.edges) non_loops += e.scenario != ScenarioCode::initial && e.scenario != ScenarioCode::reciprocal && !e.is_loop();
    CHECK(static_cast<std::size_t>(count(all, ScenarioCode::reciprocal)) == non_loops);
    check_growth(all);

    c.reciprocal->selfloop_recip = true;
    const auto loops = generate(2000, seed, c);
    std::size_t fresh = 0;
    for (const auto& e : loops.edges) fresh += e.scenario != ScenarioCode::initial && e.scenario != ScenarioCode::reciprocal;
    CHECK(static_cast<std::size_t>(count(loops, ScenarioCode::reciprocal)) == fresh);
}

TEST_CASE("group labels follow the mixing vector") {
    GenerationConfig c;
    c.seed = 8;
    c.reciprocal = ReciprocalConfig{{0.4, 0.6}, {{0.4, 0.1}, {0.2, 0.5}}, false};
    const std::size_t n = 20000;
    const auto net = generate(n, build_initial_network(InitialNetworkSpec{}, 2), c);
    std::size_t g1 = 0;
    for (std::size_t j = net.initial_nodes; j < net.nodes.size(); ++j) {
        REQUIRE((net.nodes[j].group == 1 || net.nodes[j].group == 2));
        g1 += net.nodes[j].group == 1;
    }
    const double created = static_cast<double>(net.nodes.size() - net.initial_nodes);
    CHECK(std::fabs(g1 / created - 0.4) <= 3 * std::sqrt(0.24 / created));
    CHECK(net.nodes[0].group == 1);
}

TEST_CASE("custom preferences generate and verify") {
    GenerationConfig c;
    c.seed = 6;
    c.scenario = {0.2, 0.6, 0.2, 0, 0, true, true};
    c.preference = PreferenceSpec::custom_directed("log(outs + 1) + 1", "log(ins + 1) + 1");
    c.edgeweight = DistributionSpec::gamma(5, 0.2);
    const auto net = generate(3000, build_initial_network(InitialNetworkSpec{}), c);
    CHECK(stats::verify_node_attributes(net, c.preference).pass);
}

TEST_CASE("undirected growth") {
    InitialNetworkSpec s;
    s.directed = false;
    s.edgelist.clear();
    for (int i = 1; i <= 20; ++i) s.edgelist.push_back({i, i % 20 + 1});
    GenerationConfig c;
    c.seed = 2;
    c.preference = PreferenceSpec::default_undirected();
    c.scenario = {0.4, 0.3, 0.1, 0.1, 0.1, false, true};
    c.newedge.sampler = DistributionSpec::poisson_plus_one(1.0);
    c.newedge.node_replace = false;
    const auto net = generate(2000, build_initial_network(s), c);
    check_growth(net);
    CHECK_FALSE(net.directed);
    CHECK(stats::verify_node_attributes(net, c.preference).pass);
    for (const auto& n : net.nodes) CHECK(n.out_strength == n.in_strength);

    auto bagx = c;
    bagx.method = Method::bagx;
    CHECK(stats::verify_node_attributes(generate(2000, build_initial_network(s), bagx), c.preference).pass);
}

TEST_CASE("negative preference aborts with a diagnostic") {
    GenerationConfig c;
    c.seed = 1;
    c.preference = PreferenceSpec::custom_directed("outs + 1", "2.5 - ins");
    try {
        generate(1000, build_initial_network(InitialNetworkSpec{}), c);
        FAIL("expected the run to abort");
    } catch (const NegativePreferenceError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("node") != std::string::npos);
        CHECK(msg.find("ins=3") != std::string::npos);
    }
}

TEST_CASE("domain errors abort generation") {
    GenerationConfig c;
    c.preference = PreferenceSpec::custom_directed("log(outs)", "ins + 1");
    CHECK_THROWS_AS(Generator(build_initial_network(InitialNetworkSpec{}), c), DomainError);
}

TEST_CASE("invalid configs are refused up front") {
    GenerationConfig c;
    c.scenario.beta = 0.5;
    CHECK_THROWS_AS(Generator(build_initial_network(InitialNetworkSpec{}), c), ConfigError);
}
