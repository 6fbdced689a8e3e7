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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "pagen/config.hpp"
#include "pagen/network.hpp"
#include "pagen/preference.hpp"

namespace pagen::io {

using json = nlohmann::json;

/// A parsed generation config: the library config plus run-level fields.
struct ConfigDocument {
    GenerationConfig config;
    InitialNetworkSpec initial;
    std::size_t nstep = 1000;
    std::optional<std::string> initial_path;  // set when the seed came from a file
};

/// Reads a config object. Unknown keys and wrong types raise ConfigError with
/// a JSON pointer to the field. `base_dir` resolves a relative initial/path.
ConfigDocument parse_config(const json& doc, const std::filesystem::path& base_dir = {});

/// Parses JSON text; malformed input raises ParseError with the byte offset.
json parse_json(std::string_view text);
ConfigDocument load_config(const std::filesystem::path& path);

/// A standalone preference block, e.g. {"sparams": [...], "tparams": [...]}.
PreferenceSpec parse_preference(const json& block, bool directed, const std::string& path = "/preference");

DistributionSpec parse_distribution(const json& value, const std::string& path);

/// Normalized echo of a config with every default filled in.
json to_json(const ConfigDocument& doc);
json to_json(const DistributionSpec& spec);
json to_json(const PreferenceSpec& pref);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

void write_edges(std::ostream& out, const Network& net);
void write_nodes(std::ostream& out, const Network& net);
void write_edges(const std::filesystem::path& path, const Network& net);
void write_nodes(const std::filesystem::path& path, const Network& net);

/// Edge table rows as (1-based source, 1-based target, weight, scenario).
/// Missing or malformed fields raise FormatError naming the line.
Network read_edges(std::istream& in, bool directed, const std::string& name = "edges");

/// Replaces the node table of `net` with the rows of a node TSV.
void read_nodes(std::istream& in, Network& net, const std::string& name = "nodes");

Network read_network(const std::filesystem::path& edges, const std::optional<std::filesystem::path>& nodes,
                     bool directed);

/// FNV-1a over the edge and node tables as written to TSV.
std::uint64_t content_hash(const Network& net);
std::string hex(std::uint64_t v);

json meta(const ConfigDocument& doc, const Network& net);

}  // namespace pagen::io
