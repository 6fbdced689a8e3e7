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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pagen/config.hpp"
#include "pagen/network.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"

namespace pagen::bench {

struct ErSeed {
    std::size_t nodes = 10000;
    std::size_t edges = 1000000;
};

struct BenchPlan {
    std::vector<Method> methods{Method::binary, Method::linear};
    std::vector<std::size_t> steps{1000, 10000, 100000};
    std::vector<double> k_values{0.5, 1.0, 2.0};
    std::size_t replicas = 10;
    std::uint64_t seed_base = 1;
    std::optional<ErSeed> er;  // default initial network when absent
    /// Weighted: alpha = beta = gamma = 1/3 with Gamma(5, 0.2) weights.
    /// Unweighted: alpha = 1, unit weights.
    bool weighted = true;
    unsigned threads = 1;

    /// replicas >= 3, steps nonempty and strictly increasing, methods and k
    /// nonempty. Throws ConfigError.
    void validate() const;
};

/// Seed multigraph whose edge endpoints are drawn uniformly with replacement.
/// Weights come from `weight` when `weighted`, otherwise 1.
Network make_er_seed(std::size_t nodes, std::size_t edges, bool weighted, const DistributionSpec& weight, Rng& rng);

/// Config of one table cell: preferences x^k + 0.1 (source) and y^k + 0.1
/// (target).
GenerationConfig cell_config(Method method, double k, bool weighted, std::uint64_t seed);

struct BenchRow {
    Method method = Method::binary;
    double k = 1.0;
    std::size_t n = 0;
    std::size_t replica_count = 0;  // successful replicas
    double median_seconds = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    std::optional<double> scaling_ratio;  // median / median at the previous n
    std::string status = "ok";
    std::uint64_t network_hash = 0;  // of replica 0
};

/// Times the generation loop of every (method, k, n) cell. Replica r of every
/// cell uses seed Rng::stream_seed(seed_base, r). Failed replicas are left
/// out and the row is flagged.
std::vector<BenchRow> run_bench(const BenchPlan& plan);

/// Percentile with linear interpolation; `q` in [0, 1].
double quantile(std::vector<double> values, double q);

/// {"methods": [...], "steps": [...], "k_values": [...], "replicas": R,
///  "seed_base": S, "weighted": true, "threads": T,
///  "initial": "default" | {"er": {"nodes": N, "edges": M}}}
BenchPlan parse_plan(const nlohmann::json& doc);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace pagen::bench
