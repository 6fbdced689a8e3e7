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

#include "pagen/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

#include "pagen/errors.hpp"
#include "pagen/generator.hpp"
#include "pagen/io.hpp"

namespace pagen::bench {

void BenchPlan::validate() const {
    if (methods.empty()) throw ConfigError("at least one method is required", "/methods");
    if (k_values.empty()) throw ConfigError("at least one k is required", "/k_values");
    if (steps.empty()) throw ConfigError("at least one n is required", "/steps");
    for (std::size_t i = 1; i < steps.size(); ++i) {
        if (steps[i] <= steps[i - 1]) throw ConfigError("n values must be strictly increasing", "/steps/" + std::to_string(i));
    }
    if (replicas < 3) throw ConfigError("replicas must be at least 3", "/replicas");
    if (er && (er->nodes < 2 || er->edges < 1)) throw ConfigError("ER seed needs nodes >= 2 and edges >= 1", "/initial");
}

Network make_er_seed(std::size_t nodes, std::size_t edges, bool weighted, const DistributionSpec& weight, Rng& rng) {
    if (nodes < 2 || edges < 1) throw ConfigError("ER seed needs nodes >= 2 and edges >= 1");
    std::optional<Distribution> w;
    if (weighted) w.emplace(weight);
    Network net;
    net.directed = true;
    net.nodes.resize(nodes);
    net.edges.reserve(edges);
    for (std::size_t i = 0; i < edges; ++i) {
        EdgeRecord e;
        e.source = static_cast<NodeId>(rng.below(nodes));
        e.target = static_cast<NodeId>(rng.below(nodes));
        e.weight = w ? (*w)(rng) : 1.0;
        net.edges.push_back(e);
        net.accumulate(e);
    }
    net.initial_nodes = nodes;
    net.initial_edges = edges;
    return net;
}

GenerationConfig cell_config(Method method, double k, bool weighted, std::uint64_t seed) {
    GenerationConfig c;
    c.method = method;
    c.seed = seed;
    c.preference.sparams = {1, k, 0, 0, 0.1};
    c.preference.tparams = {0, 0, 1, k, 0.1};
    if (weighted) {
        c.scenario.alpha = c.scenario.beta = c.scenario.gamma = 1.0 / 3.0;
        c.edgeweight = DistributionSpec::gamma(5.0, 0.2);
    }
    return c;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

namespace {

struct Cell {
    Method method;
    double k;
    std::size_t n;
};

BenchRow run_cell(const BenchPlan& plan, const Cell& cell) {
    BenchRow row;
    row.method = cell.method;
    row.k = cell.k;
    row.n = cell.n;
    std::vector<double> times;
    std::string first_error;
    for (std::size_t r = 0; r < plan.replicas; ++r) {
        const std::uint64_t seed = Rng::stream_seed(plan.seed_base, r);
        try {
            Rng rng(seed);
            Network seed_net;
            if (plan.er) {
                Rng er_rng(Rng::stream_seed(seed, 0x5eed));
                seed_net = make_er_seed(plan.er->nodes, plan.er->edges, plan.weighted, DistributionSpec::gamma(5.0, 0.2),
                                        er_rng);
            } else {
                seed_net = build_initial_network(InitialNetworkSpec{});
            }
            Generator g(std::move(seed_net), cell_config(cell.method, cell.k, plan.weighted, seed), rng);
            const auto t0 = std::chrono::steady_clock::now();
            g.run(cell.n);
            const auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
            if (r == 0) row.network_hash = io::content_hash(g.network());
        } catch (const std::exception& e) {
            if (first_error.empty()) {
                first_error = (dynamic_cast<const ConfigError*>(&e) ? "config_error: " : "generation_error: ") +
                              std::string(e.what());
            }
        }
    }
    row.replica_count = times.size();
    if (!first_error.empty()) row.status = first_error;
    if (!times.empty()) {
        row.median_seconds = quantile(times, 0.5);
        row.p25 = quantile(times, 0.25);
        row.p75 = quantile(times, 0.75);
    } else {
        row.median_seconds = row.p25 = row.p75 = std::nan("");
    }
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchPlan& plan) {
    plan.validate();
    std::vector<Cell> cells;
    for (Method m : plan.methods) {
        for (double k : plan.k_values) {
            for (std::size_t n : plan.steps) cells.push_back({m, k, n});
        }
    }
    std::vector<BenchRow> rows(cells.size());
    // One worker per cell at a time, so replicas of a cell never compete.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(plan, cells[i]);
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& prev = rows[i - 1];
        auto& cur = rows[i];
        if (prev.method == cur.method && prev.k == cur.k && prev.median_seconds > 0.0 && cur.replica_count > 0) {
            cur.scaling_ratio = cur.median_seconds / prev.median_seconds;
        }
    }
    return rows;
}

BenchPlan parse_plan(const nlohmann::json& doc) {
    using nlohmann::json;
    if (!doc.is_object()) throw ConfigError("expected an object", "/");
    BenchPlan plan;
    for (const auto& [key, value] : doc.items()) {
        const std::string path = "/" + key;
        auto count = [&](const json& v, const std::string& p) -> std::uint64_t {
            if (v.is_number_unsigned()) return v.get<std::uint64_t>();
            if (v.is_number_float() && v.get<double>() >= 0 && std::floor(v.get<double>()) == v.get<double>()) {
                return static_cast<std::uint64_t>(v.get<double>());
            }
            throw ConfigError("expected a nonnegative integer", p);
        };
        auto array = [&](const json& v) {
            if (!v.is_array()) throw ConfigError("expected an array", path);
            return v;
        };
        if (key == "methods") {
            plan.methods.clear();
            const auto a = array(value);
            for (std::size_t i = 0; i < a.size(); ++i) {
                const auto m = a[i].is_string() ? parse_method(a[i].get<std::string>()) : std::nullopt;
                if (!m) throw ConfigError("expected one of binary, linear, bagx, bag", path + "/" + std::to_string(i));
                plan.methods.push_back(*m);
            }
        } else if (key == "steps") {
            plan.steps.clear();
            const auto a = array(value);
            for (std::size_t i = 0; i < a.size(); ++i) plan.steps.push_back(count(a[i], path + "/" + std::to_string(i)));
        } else if (key == "k_values") {
            plan.k_values.clear();
            const auto a = array(value);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!a[i].is_number()) throw ConfigError("expected a number", path + "/" + std::to_string(i));
                plan.k_values.push_back(a[i].get<double>());
            }
        } else if (key == "replicas") {
            plan.replicas = count(value, path);
        } else if (key == "seed_base") {
            plan.seed_base = count(value, path);
        } else if (key == "threads") {
            plan.threads = static_cast<unsigned>(count(value, path));
        } else if (key == "weighted") {
            if (!value.is_boolean()) throw ConfigError("expected true or false", path);
            plan.weighted = value.get<bool>();
        } else if (key == "initial") {
            if (value.is_string() && value.get<std::string>() == "default") {
                plan.er.reset();
            } else if (value.is_object() && value.size() == 1 && value.contains("er") && value["er"].is_object()) {
                ErSeed er;
                for (const auto& [k2, v2] : value["er"].items()) {
                    if (k2 == "nodes") er.nodes = count(v2, "/initial/er/nodes");
                    else if (k2 == "edges") er.edges = count(v2, "/initial/er/edges");
                    else throw ConfigError("unknown key", "/initial/er/" + k2);
                }
                plan.er = er;
            } else {
                throw ConfigError("expected \"default\" or {\"er\": {\"nodes\": N, \"edges\": M}}", path);
            }
        } else {
            throw ConfigError("unknown key", path);
        }
    }
    plan.validate();
    return plan;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    auto num = [](double v) { return std::isnan(v) ? std::string() : io::format_double(v); };
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + '"';
    };
    out << "method,k,n,replica_count,median_seconds,p25,p75,scaling_ratio,status,network_hash\n";
    for (const auto& r : rows) {
        out << to_string(r.method) << ',' << io::format_double(r.k) << ',' << r.n << ',' << r.replica_count << ','
            << num(r.median_seconds) << ',' << num(r.p25) << ',' << num(r.p75) << ','
            << (r.scaling_ratio ? io::format_double(*r.scaling_ratio) : std::string()) << ','
            << (r.status == "ok" ? r.status : quote(r.status)) << ',' << io::hex(r.network_hash) << '\n';
    }
}

}  // namespace pagen::bench
