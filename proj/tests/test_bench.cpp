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
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "pagen/bench.hpp"
#include "pagen/errors.hpp"
#include "pagen/io.hpp"

using namespace pagen;

namespace {

bench::BenchPlan small_plan() {
    bench::BenchPlan p;
    p.steps = {100, 200, 400};
    p.replicas = 3;
    return p;
}

}  // namespace

TEST_CASE("plan validation") {
    auto p = small_plan();
    CHECK_NOTHROW(p.validate());
    p.replicas = 2;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small_plan();
    p.steps = {100, 100};
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small_plan();
    p.methods.clear();
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("parse_plan") {
    const auto plan = bench::parse_plan(io::parse_json(
        R"({"methods": ["binary", "bag"], "steps": [10, 20], "k_values": [1], "replicas": 4,
            "seed_base": 9, "weighted": false, "threads": 2, "initial": {"er": {"nodes": 50, "edges": 200}}})"));
    CHECK(plan.methods == std::vector<Method>{Method::binary, Method::bag});
    CHECK(plan.steps == std::vector<std::size_t>{10, 20});
    CHECK(plan.replicas == 4);
    CHECK(plan.seed_base == 9);
    CHECK_FALSE(plan.weighted);
    REQUIRE(plan.er);
    CHECK(plan.er->nodes == 50);
    CHECK(plan.er->edges == 200);

    auto path = [](const char* text) -> std::string {
        try {
            bench::parse_plan(io::parse_json(text));
        } catch (const ConfigError& e) {
            return e.path();
        }
        return "<no error>";
    };
    CHECK(path(R"({"method": ["binary"]})") == "/method");
    CHECK(path(R"({"methods": ["tree"]})") == "/methods/0");
    CHECK(path(R"({"steps": [10, -1]})") == "/steps/1");
    CHECK(path(R"({"replicas": 1})") == "/replicas");
    CHECK(path(R"({"initial": {"er": {"nodes": 5, "edge": 3}}})") == "/initial/er/edge");
}

TEST_CASE("ER seed") {
    Rng rng(4);
    const auto tiny = bench::make_er_seed(2, 1, false, DistributionSpec::constant(), rng);
    CHECK(tiny.nodes.size() == 2);
    REQUIRE(tiny.edges.size() == 1);
    CHECK(tiny.edges[0].weight == 1.0);

    const std::size_t nodes = 10, edges = 100000;
    const auto net = bench::make_er_seed(nodes, edges, false, DistributionSpec::constant(), rng);
    std::vector<double> incidence(nodes, 0);
    for (const auto& e : net.edges) {
        incidence[e.source] += 1;
        incidence[e.target] += 1;
    }
    // 2 * edges endpoint draws, each uniform over the nodes
    const double mean = 2.0 * edges / nodes;
    const double sd = std::sqrt(2.0 * edges * (1.0 / nodes) * (1 - 1.0 / nodes));
    for (double c : incidence) CHECK(std::fabs(c - mean) <= 3 * sd);

    const auto w = bench::make_er_seed(1000, 100000, true, DistributionSpec::gamma(5, 0.2), rng);
    double s = 0;
    for (const auto& e : w.edges) s += e.weight;
    CHECK(std::fabs(s / 100000 - 1.0) <= 3 * std::sqrt(0.2 / 100000));
    CHECK(w.initial_edges == 100000);

    CHECK_THROWS_AS(bench::make_er_seed(1, 5, false, DistributionSpec::constant(), rng), ConfigError);
}

TEST_CASE("cell config") {
    const auto c = bench::cell_config(Method::linear, 0.5, true, 3);
    CHECK(c.preference.sparams == std::array<double, 5>{1, 0.5, 0, 0, 0.1});
    CHECK(c.preference.tparams == std::array<double, 5>{0, 0, 1, 0.5, 0.1});
    CHECK(c.scenario.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(c.edgeweight.kind == DistributionSpec::Kind::gamma);
    const auto u = bench::cell_config(Method::bag, 1, false, 3);
    CHECK(u.scenario.alpha == 1.0);
    CHECK(u.edgeweight.is_unit_constant());
}

TEST_CASE("cartesian table with scaling ratios") {
    const auto rows = bench::run_bench(small_plan());
    REQUIRE(rows.size() == 18);
    std::set<std::tuple<int, double, std::size_t>> cells;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        cells.insert({static_cast<int>(r.method), r.k, r.n});
        CHECK(r.status == "ok");
        CHECK(r.replica_count == 3);
        CHECK(r.p25 <= r.median_seconds);
        CHECK(r.median_seconds <= r.p75);
        CHECK((r.n == 100) != r.scaling_ratio.has_value());
    }
    CHECK(cells.size() == 18);

    std::ostringstream csv;
    bench::write_csv(csv, rows);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,k,n,replica_count,median_seconds,p25,p75,scaling_ratio,status,network_hash");
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(lines == 18);
}

TEST_CASE("bag on the weighted config is flagged") {
    auto plan = small_plan();
    plan.methods = {Method::bag, Method::binary};
    plan.k_values = {1};
    const auto rows = bench::run_bench(plan);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].status.rfind("config_error", 0) == 0);
        CHECK(rows[i].replica_count == 0);
        CHECK(std::isnan(rows[i].median_seconds));
    }
    for (std::size_t i = 3; i < 6; ++i) CHECK(rows[i].status == "ok");

    std::ostringstream csv;
    bench::write_csv(csv, rows);
    CHECK(csv.str().find("\"config_error") != std::string::npos);
}

TEST_CASE("reruns reproduce the generated networks") {
    auto plan = small_plan();
    plan.k_values = {0.5};
    plan.threads = 2;
    const auto a = bench::run_bench(plan);
    plan.threads = 1;
    const auto b = bench::run_bench(plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].network_hash == b[i].network_hash);
        CHECK(a[i].network_hash != 0);
    }
    CHECK(a[0].network_hash != a[1].network_hash);
}

TEST_CASE("quantiles") {
    CHECK(bench::quantile({3, 1, 2}, 0.5) == 2.0);
    CHECK(bench::quantile({1, 2, 3, 4}, 0.5) == 2.5);
    CHECK(bench::quantile({1, 2, 3, 4, 5}, 0.25) == 2.0);
    CHECK(std::isnan(bench::quantile({}, 0.5)));
}
