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

#include "pagen/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pagen/errors.hpp"

namespace pagen::io {

namespace {

std::string escape_key(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// An object whose keys are checked against a fixed list.
class Block {
public:
    Block(const json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path)) {
        if (!j.is_object()) throw ConfigError("expected an object", path_.empty() ? "/" : path_);
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, value] : j.items()) {
            if (!ok.count(key)) throw ConfigError("unknown key", at(key));
        }
    }

    std::string at(const std::string& key) const { return path_ + "/" + escape_key(key); }
    const json* find(const char* key) const {
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const char* key, double fallback) const {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_number()) throw ConfigError("expected a number", at(key));
        return v->get<double>();
    }

    bool boolean(const char* key, bool fallback) const {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw ConfigError("expected true or false", at(key));
        return v->get<bool>();
    }

    std::optional<std::string> string(const char* key) const {
        const json* v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) throw ConfigError("expected a string", at(key));
        return v->get<std::string>();
    }

    std::uint64_t count(const char* key, std::uint64_t fallback) const {
        const json* v = find(key);
        if (!v) return fallback;
        if (v->is_number_unsigned()) return v->get<std::uint64_t>();
        if (v->is_number_float()) {
            const double d = v->get<double>();
            if (d >= 0.0 && std::floor(d) == d && d < 1.8e19) return static_cast<std::uint64_t>(d);
        }
        throw ConfigError("expected a nonnegative integer", at(key));
    }

    std::vector<double> numbers(const char* key) const { return number_array(*find(key), at(key)); }

    static std::vector<double> number_array(const json& v, const std::string& path) {
        if (!v.is_array()) throw ConfigError("expected an array of numbers", path);
        std::vector<double> out;
        out.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError("expected a number", path + "/" + std::to_string(i));
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

std::int64_t integer_label(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::fabs(d) < 9e15) return static_cast<std::int64_t>(d);
    }
    throw ConfigError("expected an integer node label", path);
}

template <std::size_t N>
std::array<double, N> fixed_params(const Block& b, const char* key, std::array<double, N> fallback) {
    if (!b.find(key)) return fallback;
    const auto v = b.numbers(key);
    if (v.size() != N) throw ConfigError("expected " + std::to_string(N) + " numbers", b.at(key));
    std::array<double, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

// Raw rows of an edge TSV.
struct EdgeRow {
    std::int64_t source;
    std::int64_t target;
    double weight;
    int scenario;
};

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return out;
}

[[noreturn]] void bad_line(const std::string& name, std::size_t line, const std::string& what) {
    throw FormatError(name + " line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_field(std::string_view s, const std::string& name, std::size_t line, const char* column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        bad_line(name, line, std::string("cannot parse ") + column + " '" + std::string(s) + "'");
    }
    return value;
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::vector<EdgeRow> read_edge_rows(std::istream& in, const std::string& name) {
    std::string line;
    if (!read_line(in, line)) bad_line(name, 1, "missing header");
    const auto header = split_tabs(line);
    const bool four = header.size() == 4 && header[3] == "scenario";
    if (header.size() < 3 || header.size() > 4 || header[0] != "source" || header[1] != "target" ||
        header[2] != "weight" || (header.size() == 4 && !four)) {
        bad_line(name, 1, "expected header 'source\\ttarget\\tweight\\tscenario'");
    }
    std::vector<EdgeRow> rows;
    std::size_t lineno = 1;
    while (read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != header.size()) {
            bad_line(name, lineno, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
        }
        EdgeRow r{};
        r.source = parse_field<std::int64_t>(f[0], name, lineno, "source");
        r.target = parse_field<std::int64_t>(f[1], name, lineno, "target");
        r.weight = parse_field<double>(f[2], name, lineno, "weight");
        r.scenario = four ? parse_field<int>(f[3], name, lineno, "scenario") : 0;
        if (r.source < 1 || r.target < 1) bad_line(name, lineno, "node labels must be positive");
        if (!(r.weight > 0.0) || !std::isfinite(r.weight)) bad_line(name, lineno, "weight must be positive");
        if (r.scenario < 0 || r.scenario > 6) bad_line(name, lineno, "scenario must lie in 0..6");
        rows.push_back(r);
    }
    return rows;
}

InitialNetworkSpec parse_initial(const json& j, const std::filesystem::path& base_dir, std::optional<std::string>& path_out) {
    const Block b(j, "/initial", {"edgelist", "edgeweight", "directed", "nodegroup", "path"});
    InitialNetworkSpec spec;
    spec.directed = b.boolean("directed", true);

    if (auto p = b.string("path")) {
        if (b.find("edgelist") || b.find("edgeweight")) {
            throw ConfigError("give either path or edgelist/edgeweight, not both", b.at("path"));
        }
        std::filesystem::path file(*p);
        if (file.is_relative()) file = base_dir / file;
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot open " + file.string(), b.at("path"));
        std::vector<EdgeRow> rows;
        try {
            rows = read_edge_rows(in, file.string());
        } catch (const FormatError& e) {
            throw ConfigError(e.what(), b.at("path"));
        }
        spec.edgelist.clear();
        std::vector<double> weights;
        for (const auto& r : rows) {
            spec.edgelist.emplace_back(r.source, r.target);
            weights.push_back(r.weight);
        }
        spec.edgeweight = std::move(weights);
        path_out = *p;
    } else if (const json* el = b.find("edgelist")) {
        const std::string path = b.at("edgelist");
        if (!el->is_array()) throw ConfigError("expected an array of [source, target] pairs", path);
        spec.edgelist.clear();
        for (std::size_t i = 0; i < el->size(); ++i) {
            const auto& row = (*el)[i];
            const std::string rp = path + "/" + std::to_string(i);
            if (!row.is_array() || row.size() != 2) throw ConfigError("expected a [source, target] pair", rp);
            spec.edgelist.emplace_back(integer_label(row[0], rp + "/0"), integer_label(row[1], rp + "/1"));
        }
    }
    if (b.find("edgeweight")) spec.edgeweight = b.numbers("edgeweight");
    if (const json* g = b.find("nodegroup")) {
        const auto values = Block::number_array(*g, b.at("nodegroup"));
        std::vector<int> groups;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::floor(values[i]) != values[i]) {
                throw ConfigError("group must be an integer", b.at("nodegroup") + "/" + std::to_string(i));
            }
            groups.push_back(static_cast<int>(values[i]));
        }
        spec.nodegroup = std::move(groups);
    }
    return spec;
}

ScenarioConfig parse_scenario(const json& j) {
    const Block b(j, "/scenario", {"alpha", "beta", "gamma", "xi", "rho", "beta_loop", "source_first"});
    ScenarioConfig s;
    // Any block given replaces the default alpha = 1 scheme.
    const bool any = b.find("alpha") || b.find("beta") || b.find("gamma") || b.find("xi") || b.find("rho");
    s.alpha = b.number("alpha", any ? 0.0 : 1.0);
    s.beta = b.number("beta", 0.0);
    s.gamma = b.number("gamma", 0.0);
    s.xi = b.number("xi", 0.0);
    s.rho = b.number("rho", 0.0);
    s.beta_loop = b.boolean("beta_loop", true);
    s.source_first = b.boolean("source_first", true);
    return s;
}

ReciprocalConfig parse_reciprocal(const json& j) {
    const Block b(j, "/reciprocal", {"group_prob", "recip_prob", "selfloop_recip"});
    ReciprocalConfig r;
    if (!b.find("group_prob")) throw ConfigError("missing group_prob", "/reciprocal/group_prob");
    if (!b.find("recip_prob")) throw ConfigError("missing recip_prob", "/reciprocal/recip_prob");
    r.group_prob = b.numbers("group_prob");
    const json& q = *b.find("recip_prob");
    if (!q.is_array()) throw ConfigError("expected a matrix (array of rows)", "/reciprocal/recip_prob");
    for (std::size_t i = 0; i < q.size(); ++i) {
        r.recip_prob.push_back(Block::number_array(q[i], "/reciprocal/recip_prob/" + std::to_string(i)));
    }
    r.selfloop_recip = b.boolean("selfloop_recip", false);
    return r;
}

}  // namespace

DistributionSpec parse_distribution(const json& value, const std::string& path) {
    if (value.is_number()) return DistributionSpec::constant(value.get<double>());
    const Block b(value, path, {"type", "value", "shape", "scale", "lambda", "lo", "hi", "values", "probs"});
    const auto type = b.string("type");
    if (!type) throw ConfigError("missing type", path + "/type");
    auto require = [&](const char* key) {
        if (!b.find(key)) throw ConfigError("missing " + std::string(key) + " for " + *type, b.at(key));
    };
    auto only = [&](std::initializer_list<const char*> keys) {
        for (const char* k : {"value", "shape", "scale", "lambda", "lo", "hi", "values", "probs"}) {
            if (b.find(k) && std::find_if(keys.begin(), keys.end(), [&](const char* x) { return std::string(x) == k; }) ==
                                 keys.end()) {
                throw ConfigError(std::string(k) + " does not apply to " + *type, b.at(k));
            }
        }
    };
    if (*type == "constant") {
        only({"value"});
        return DistributionSpec::constant(b.number("value", 1.0));
    }
    if (*type == "gamma") {
        only({"shape", "scale"});
        require("shape");
        require("scale");
        return DistributionSpec::gamma(b.number("shape", 1.0), b.number("scale", 1.0));
    }
    if (*type == "poisson_plus_one") {
        only({"lambda"});
        require("lambda");
        return DistributionSpec::poisson_plus_one(b.number("lambda", 1.0));
    }
    if (*type == "uniform") {
        only({"lo", "hi"});
        require("lo");
        require("hi");
        return DistributionSpec::uniform(b.number("lo", 0.0), b.number("hi", 1.0));
    }
    if (*type == "discrete") {
        only({"values", "probs"});
        require("values");
        require("probs");
        return DistributionSpec::discrete(b.numbers("values"), b.numbers("probs"));
    }
    throw ConfigError("unknown distribution '" + *type + "' (constant, gamma, poisson_plus_one, uniform, discrete)",
                      path + "/type");
}

PreferenceSpec parse_preference(const json& block, bool directed, const std::string& path) {
    const Block b(block, path, {"ftype", "sparams", "tparams", "params", "spref", "tpref", "pref"});
    const bool has_expr = b.find("spref") || b.find("tpref") || b.find("pref");
    const std::string ftype = b.string("ftype").value_or(has_expr ? "customized" : "default");
    if (ftype != "default" && ftype != "customized") {
        throw ConfigError("ftype must be 'default' or 'customized'", b.at("ftype"));
    }
    auto reject = [&](std::initializer_list<const char*> keys, const std::string& why) {
        for (const char* k : keys) {
            if (b.find(k)) throw ConfigError(std::string(k) + " " + why, b.at(k));
        }
    };
    auto expression = [&](const char* key) -> std::string {
        return b.string(key).value_or("");
    };

    if (ftype == "default") {
        reject({"spref", "tpref", "pref"}, "requires ftype 'customized'");
        if (directed) {
            reject({"params"}, "applies to undirected networks");
            PreferenceSpec p;
            p.sparams = fixed_params<5>(b, "sparams", p.sparams);
            p.tparams = fixed_params<5>(b, "tparams", p.tparams);
            return p;
        }
        reject({"sparams", "tparams"}, "applies to directed networks");
        return PreferenceSpec::default_undirected(fixed_params<2>(b, "params", {1, 1}));
    }

    reject({"sparams", "tparams", "params"}, "requires ftype 'default'");
    auto parse_one = [&](const char* key, auto&& make) {
        try {
            return make();
        } catch (const ParseError& e) {
            throw ConfigError(e.what(), b.at(key));
        }
    };
    if (directed) {
        reject({"pref"}, "applies to undirected networks");
        const std::string s = expression("spref");
        const std::string t = expression("tpref");
        PreferenceSpec p = parse_one("spref", [&] { return PreferenceSpec::custom_directed(s, ""); });
        p.tpref = parse_one("tpref", [&] { return PreferenceSpec::custom_directed("", t); }).tpref;
        return p;
    }
    reject({"spref", "tpref"}, "applies to directed networks");
    if (!b.find("pref")) throw ConfigError("missing pref", b.at("pref"));
    const std::string u = expression("pref");
    return parse_one("pref", [&] { return PreferenceSpec::custom_undirected(u); });
}

ConfigDocument parse_config(const json& doc, const std::filesystem::path& base_dir) {
    const Block b(doc, "", {"scenario", "edgeweight", "newedge", "preference", "reciprocal", "method", "seed", "nstep",
                            "initial"});
    ConfigDocument out;
    std::optional<std::string> initial_path;
    if (const json* j = b.find("initial")) out.initial = parse_initial(*j, base_dir, initial_path);
    const bool directed = out.initial.directed;

    auto& c = out.config;
    if (const json* j = b.find("scenario")) c.scenario = parse_scenario(*j);
    if (const json* j = b.find("edgeweight")) {
        const Block w(*j, "/edgeweight", {"sampler"});
        if (const json* s = w.find("sampler")) c.edgeweight = parse_distribution(*s, "/edgeweight/sampler");
    }
    if (const json* j = b.find("newedge")) {
        const Block n(*j, "/newedge", {"sampler", "snode_replace", "tnode_replace", "node_replace"});
        if (const json* s = n.find("sampler")) c.newedge.sampler = parse_distribution(*s, "/newedge/sampler");
        c.newedge.snode_replace = n.boolean("snode_replace", true);
        c.newedge.tnode_replace = n.boolean("tnode_replace", true);
        c.newedge.node_replace = n.boolean("node_replace", true);
    }
    if (const json* j = b.find("preference")) {
        c.preference = parse_preference(*j, directed);
    } else if (!directed) {
        c.preference = PreferenceSpec::default_undirected();
    }
    if (const json* j = b.find("reciprocal")) c.reciprocal = parse_reciprocal(*j);
    if (auto m = b.string("method")) {
        const auto parsed = parse_method(*m);
        if (!parsed) throw ConfigError("unknown method '" + *m + "' (binary, linear, bagx, bag)", "/method");
        c.method = *parsed;
    }
    c.seed = b.count("seed", 0);
    out.nstep = b.count("nstep", 1000);

    // Surface every error now, with its path, rather than at generation time.
    const int groups = c.reciprocal ? c.reciprocal->groups() : 0;
    if (c.reciprocal) c.reciprocal->validate();
    const Network seed = build_initial_network(out.initial, groups);
    c.validate(seed);
    if (initial_path) out.initial_path = initial_path;
    return out;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError("malformed JSON (" + msg + ")", e.byte);
    }
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(parse_json(ss.str()), path.parent_path());
}

json to_json(const DistributionSpec& d) {
    using Kind = DistributionSpec::Kind;
    switch (d.kind) {
        case Kind::constant: return {{"type", "constant"}, {"value", d.value}};
        case Kind::gamma: return {{"type", "gamma"}, {"shape", d.shape}, {"scale", d.scale}};
        case Kind::poisson_plus_one: return {{"type", "poisson_plus_one"}, {"lambda", d.lambda}};
        case Kind::uniform: return {{"type", "uniform"}, {"lo", d.lo}, {"hi", d.hi}};
        case Kind::discrete: return {{"type", "discrete"}, {"values", d.values}, {"probs", d.probs}};
    }
    return {};
}

json to_json(const PreferenceSpec& p) {
    switch (p.kind) {
        case PrefKind::default_directed:
            return {{"ftype", "default"}, {"sparams", p.sparams}, {"tparams", p.tparams}};
        case PrefKind::default_undirected: return {{"ftype", "default"}, {"params", p.params}};
        case PrefKind::custom:
            if (p.pref) return {{"ftype", "customized"}, {"pref", p.pref->source_text()}};
            return {{"ftype", "customized"}, {"spref", p.spref->source_text()}, {"tpref", p.tpref->source_text()}};
    }
    return {};
}

json to_json(const ConfigDocument& doc) {
    const auto& c = doc.config;
    json j;
    j["scenario"] = {{"alpha", c.scenario.alpha},         {"beta", c.scenario.beta},
                     {"gamma", c.scenario.gamma},         {"xi", c.scenario.xi},
                     {"rho", c.scenario.rho},             {"beta_loop", c.scenario.beta_loop},
                     {"source_first", c.scenario.source_first}};
    j["edgeweight"] = {{"sampler", to_json(c.edgeweight)}};
    j["newedge"] = {{"sampler", to_json(c.newedge.sampler)},
                    {"snode_replace", c.newedge.snode_replace},
                    {"tnode_replace", c.newedge.tnode_replace},
                    {"node_replace", c.newedge.node_replace}};
    j["preference"] = to_json(c.preference);
    if (c.reciprocal) {
        j["reciprocal"] = {{"group_prob", c.reciprocal->group_prob},
                           {"recip_prob", c.reciprocal->recip_prob},
                           {"selfloop_recip", c.reciprocal->selfloop_recip}};
    }
    j["method"] = std::string(to_string(c.method));
    j["seed"] = c.seed;
    j["nstep"] = doc.nstep;
    json init = {{"directed", doc.initial.directed}};
    if (doc.initial_path) {
        init["path"] = *doc.initial_path;
    } else {
        json el = json::array();
        for (auto [s, t] : doc.initial.edgelist) el.push_back({s, t});
        init["edgelist"] = std::move(el);
        if (doc.initial.edgeweight) init["edgeweight"] = *doc.initial.edgeweight;
    }
    if (doc.initial.nodegroup) init["nodegroup"] = *doc.initial.nodegroup;
    j["initial"] = std::move(init);
    return j;
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_edges(std::ostream& out, const Network& net) {
    std::string buf = "source\ttarget\tweight\tscenario\n";
    for (const auto& e : net.edges) {
        buf += std::to_string(e.source + 1);
        buf += '\t';
        buf += std::to_string(e.target + 1);
        buf += '\t';
        buf += format_double(e.weight);
        buf += '\t';
        buf += std::to_string(to_int(e.scenario));
        buf += '\n';
        if (buf.size() > (1u << 16)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

void write_nodes(std::ostream& out, const Network& net) {
    std::string buf = net.has_groups ? "node\touts\tins\tspref\ttpref\tgroup\n" : "node\touts\tins\tspref\ttpref\n";
    for (std::size_t j = 0; j < net.nodes.size(); ++j) {
        const auto& n = net.nodes[j];
        buf += std::to_string(j + 1);
        for (double v : {n.out_strength, n.in_strength, n.source_pref, n.target_pref}) {
            buf += '\t';
            buf += format_double(v);
        }
        if (net.has_groups) {
            buf += '\t';
            buf += std::to_string(n.group);
        }
        buf += '\n';
        if (buf.size() > (1u << 16)) {
            out << buf;
            buf.clear();
        }
    }
    out << buf;
}

void write_edges(const std::filesystem::path& path, const Network& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    write_edges(out, net);
}

void write_nodes(const std::filesystem::path& path, const Network& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    write_nodes(out, net);
}

Network read_edges(std::istream& in, bool directed, const std::string& name) {
    const auto rows = read_edge_rows(in, name);
    Network net;
    net.directed = directed;
    std::int64_t max_label = 0;
    for (const auto& r : rows) max_label = std::max({max_label, r.source, r.target});
    if (max_label > static_cast<std::int64_t>(std::numeric_limits<NodeId>::max())) {
        throw FormatError(name + ": node label " + std::to_string(max_label) + " is too large");
    }
    net.nodes.resize(static_cast<std::size_t>(max_label));
    net.edges.reserve(rows.size());
    for (const auto& r : rows) {
        EdgeRecord e{static_cast<NodeId>(r.source - 1), static_cast<NodeId>(r.target - 1), r.weight,
                     static_cast<ScenarioCode>(r.scenario)};
        net.edges.push_back(e);
        net.accumulate(e);
        if (r.scenario == 0) ++net.initial_edges;
    }
    return net;
}

void read_nodes(std::istream& in, Network& net, const std::string& name) {
    std::string line;
    if (!read_line(in, line)) bad_line(name, 1, "missing header");
    const auto header = split_tabs(line);
    const char* expected[] = {"node", "outs", "ins", "spref", "tpref", "group"};
    const bool groups = header.size() == 6;
    bool ok = header.size() == 5 || groups;
    for (std::size_t i = 0; ok && i < header.size(); ++i) ok = header[i] == expected[i];
    if (!ok) bad_line(name, 1, "expected header 'node\\touts\\tins\\tspref\\ttpref[\\tgroup]'");

    std::vector<NodeRecord> nodes;
    std::size_t lineno = 1;
    while (read_line(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != header.size()) {
            bad_line(name, lineno, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
        }
        const auto id = parse_field<std::uint64_t>(f[0], name, lineno, "node");
        if (id != nodes.size() + 1) bad_line(name, lineno, "expected node " + std::to_string(nodes.size() + 1));
        NodeRecord n;
        n.out_strength = parse_field<double>(f[1], name, lineno, "outs");
        n.in_strength = parse_field<double>(f[2], name, lineno, "ins");
        n.source_pref = parse_field<double>(f[3], name, lineno, "spref");
        n.target_pref = parse_field<double>(f[4], name, lineno, "tpref");
        if (groups) n.group = parse_field<int>(f[5], name, lineno, "group");
        nodes.push_back(n);
    }
    if (nodes.size() < net.nodes.size()) {
        throw FormatError(name + ": node table has " + std::to_string(nodes.size()) + " rows but the edges reference node " +
                          std::to_string(net.nodes.size()));
    }
    net.nodes = std::move(nodes);
    net.has_groups = groups;
}

Network read_network(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& nodes,
                     bool directed) {
    std::ifstream ein(edges);
    if (!ein) throw FormatError("cannot open " + edges.string());
    Network net = read_edges(ein, directed, edges.string());
    if (nodes) {
        std::ifstream nin(*nodes);
        if (!nin) throw FormatError("cannot open " + nodes->string());
        read_nodes(nin, net, nodes->string());
    }
    return net;
}

std::uint64_t content_hash(const Network& net) {
    std::ostringstream os;
    write_edges(os, net);
    write_nodes(os, net);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    const auto [ptr, ec] = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, ptr);
    return std::string(16 - s.size(), '0') + s;
}

json meta(const ConfigDocument& doc, const Network& net) {
    return {{"nodes", net.nodes.size()},
            {"edges", net.edges.size()},
            {"initial_nodes", net.initial_nodes},
            {"initial_edges", net.initial_edges},
            {"steps", net.new_edge_counts.size()},
            {"directed", net.directed},
            {"seed", doc.config.seed},
            {"method", std::string(to_string(doc.config.method))},
            {"network_hash", hex(content_hash(net))},
            {"new_edge_counts", net.new_edge_counts},
            {"config", to_json(doc)}};
}

}  // namespace pagen::io
