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

// pagen: generate, check and benchmark preferential-attachment networks.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pagen/bench.hpp"
#include "pagen/errors.hpp"
#include "pagen/generator.hpp"
#include "pagen/io.hpp"
#include "pagen/stats.hpp"

namespace fs = std::filesystem;
using pagen::io::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kRuntime = 2 };

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw pagen::ConfigError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw pagen::FormatError("cannot write " + p.string());
    out << text;
}

int cmd_generate(const std::string& config_path, const std::string& prefix) {
    const auto doc = pagen::io::load_config(config_path);
    const int groups = doc.config.reciprocal ? doc.config.reciprocal->groups() : 0;
    pagen::Generator g(pagen::build_initial_network(doc.initial, groups), doc.config);
    g.run(doc.nstep);
    const auto& net = g.network();
    pagen::io::write_edges(prefix + ".edges.tsv", net);
    pagen::io::write_nodes(prefix + ".nodes.tsv", net);
    write_text(prefix + ".meta.json", pagen::io::meta(doc, net).dump(2) + "\n");
    std::cout << "wrote " << net.edges.size() << " edges and " << net.nodes.size() << " nodes to " << prefix
              << ".{edges,nodes}.tsv\n";
    return kOk;
}

json tail_json(const pagen::Network& net, pagen::stats::DegreeSide side) {
    try {
        const auto t = pagen::stats::tail_index(pagen::stats::degree_histogram(net, side));
        return {{"exponent", t.exponent}, {"std_error", t.std_error}, {"k", t.k}};
    } catch (const std::invalid_argument& e) {
        return {{"error", e.what()}};
    }
}

json histogram_json(const pagen::Network& net, pagen::stats::DegreeSide side) {
    const auto h = pagen::stats::degree_histogram(net, side);
    json counts = json::array();
    for (auto [deg, count] : h.counts) counts.push_back({deg, count});
    return counts;
}

int cmd_stats(const std::string& edges, const std::string& nodes, const std::string& pref_arg, bool undirected,
              const std::string& report_path, const std::string& table_path) {
    const std::string pref_text = fs::exists(pref_arg) ? slurp(pref_arg) : pref_arg;
    const auto pref = pagen::io::parse_preference(pagen::io::parse_json(pref_text), !undirected, "/preference");
    std::optional<fs::path> nodes_path;
    if (!nodes.empty()) nodes_path = nodes;
    const auto net = pagen::io::read_network(edges, nodes_path, !undirected);

    using pagen::stats::DegreeSide;
    auto check = pagen::stats::verify_node_attributes(net, pref);
    // Without a node table there is nothing stored to compare against.
    if (!nodes_path) {
        check.pass = true;
        check.max_strength_diff = check.max_pref_diff = 0.0;
        check.worst_node.reset();
    }
    json report;
    report["nodes"] = net.nodes.size();
    report["edges"] = net.edges.size();
    report["verification"] = {{"checked_node_table", nodes_path.has_value()},
                              {"pass", check.pass},
                              {"tolerance", check.tolerance},
                              {"max_strength_diff", check.max_strength_diff},
                              {"max_pref_diff", check.max_pref_diff}};
    if (check.worst_node) {
        report["verification"]["worst_node"] = *check.worst_node + 1;
        report["verification"]["worst_field"] = check.worst_field;
    }
    const std::pair<const char*, DegreeSide> sides[] = {
        {"in", DegreeSide::in}, {"out", DegreeSide::out}, {"total", DegreeSide::total}};
    for (auto [name, side] : sides) {
        report["degree_histogram"][name] = histogram_json(net, side);
        report["tail_index"][name] = tail_json(net, side);
    }

    if (!report_path.empty()) write_text(report_path, report.dump(2) + "\n");
    if (!table_path.empty()) {
        pagen::Network expected = net;
        expected.nodes = check.expected;
        pagen::io::write_nodes(table_path, expected);
    }

    std::cout << "nodes " << net.nodes.size() << ", edges " << net.edges.size() << "\n"
              << "verification " << (check.pass ? "PASS" : "FAIL") << " (max strength diff "
              << check.max_strength_diff << ", max preference diff " << check.max_pref_diff << ")"
              << (nodes_path ? "" : " [no node table given; values recomputed only]") << "\n";
    if (check.worst_node) std::cout << "  worst: node " << *check.worst_node + 1 << " " << check.worst_field << "\n";
    for (auto [name, side] : sides) {
        const auto& t = report["tail_index"][name];
        std::cout << "tail index (" << name << "): ";
        if (t.contains("error")) std::cout << t["error"].get<std::string>() << "\n";
        else std::cout << t["exponent"].get<double>() << " +/- " << t["std_error"].get<double>() << "\n";
    }
    return check.pass ? kOk : kRuntime;
}

int cmd_bench(const std::string& plan_path, const std::string& out_path) {
    const auto plan = pagen::bench::parse_plan(pagen::io::parse_json(slurp(plan_path)));
    const auto rows = pagen::bench::run_bench(plan);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw pagen::FormatError("cannot write " + out_path);
    pagen::bench::write_csv(out, rows);
    std::size_t flagged = 0;
    for (const auto& r : rows) flagged += r.status != "ok";
    std::cout << "wrote " << rows.size() << " rows to " << out_path;
    if (flagged) std::cout << " (" << flagged << " flagged)";
    std::cout << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate, check and benchmark preferential-attachment networks"};
    app.require_subcommand(1);

    std::string config, prefix;
    auto* gen = app.add_subcommand("generate", "Grow a network from a JSON config");
    gen->add_option("--config", config, "Config file")->required();
    gen->add_option("--out", prefix, "Output prefix")->required();

    std::string edges, nodes, pref_json, report, table;
    bool undirected = false;
    auto* st = app.add_subcommand("stats", "Verify node attributes and summarize degrees");
    st->add_option("--edges", edges, "Edge TSV")->required();
    st->add_option("--nodes", nodes, "Node TSV to verify");
    st->add_option("--pref-json", pref_json, "Preference block as JSON text or a file")->required();
    st->add_flag("--undirected", undirected, "Treat the network as undirected");
    st->add_option("--report", report, "Write the JSON report here");
    st->add_option("--table-out", table, "Write the recomputed node table here");

    std::string plan, csv;
    auto* be = app.add_subcommand("bench", "Time the generation methods");
    be->add_option("--plan", plan, "Plan file")->required();
    be->add_option("--out", csv, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_generate(config, prefix);
        if (*st) return cmd_stats(edges, nodes, pref_json, undirected, report, table);
        if (*be) return cmd_bench(plan, csv);
    } catch (const pagen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const pagen::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kUsage;
    } catch (const pagen::GenerationError& e) {
        std::cerr << "generation aborted: " << e.what() << "\n";
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
    return kUsage;
}
