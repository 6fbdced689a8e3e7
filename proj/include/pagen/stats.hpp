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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pagen/network.hpp"
#include "pagen/preference.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"

namespace pagen::stats {

struct AttributeReport {
    bool pass = true;
    double tolerance = 1e-9;
    double max_strength_diff = 0.0;
    double max_pref_diff = 0.0;
    std::optional<NodeId> worst_node;  // node with the largest discrepancy, if any
    std::string worst_field;
    std::vector<NodeRecord> expected;  // recomputed table
};

/// Recomputes strengths from the edge list and preference scores from
/// `pref`, and compares them with the stored node table.
AttributeReport verify_node_attributes(const Network& network, const PreferenceSpec& pref, double tolerance = 1e-9);

enum class DegreeSide { in, out, total };

/// Unweighted degree per node (edge counts; a self-loop counts once on each
/// side and twice toward the total).
std::vector<std::uint64_t> degrees(const Network& network, DegreeSide side);

struct DegreeHistogram {
    DegreeSide side = DegreeSide::in;
    std::map<std::uint64_t, std::uint64_t> counts;               // degree -> nodes
    std::vector<std::pair<std::uint64_t, double>> ccdf;          // degree -> fraction with degree >= it
    std::uint64_t node_count = 0;
};

DegreeHistogram degree_histogram(std::span<const std::uint64_t> degrees, DegreeSide side = DegreeSide::in);
DegreeHistogram degree_histogram(const Network& network, DegreeSide side);

struct TailEstimate {
    double exponent = 0.0;   // gamma in P(X = x) ~ x^-gamma
    double std_error = 0.0;  // bootstrap
    std::size_t k = 0;       // order statistics used
};

/// Hill estimator over the largest `k_fraction` of the positive values. The
/// reported exponent is that of the density (1 + the Hill estimate of the
/// survival-function index). Throws std::invalid_argument when fewer than
/// 100 positive values exist or the tail is degenerate.
TailEstimate hill_tail(std::span<const double> sample, double k_fraction = 0.1, std::size_t bootstrap = 100,
                       std::uint64_t seed = 1);

TailEstimate tail_index(const DegreeHistogram& hist, double k_fraction = 0.1, std::size_t bootstrap = 100,
                        std::uint64_t seed = 1);

struct GoodnessOfFit {
    std::vector<std::uint64_t> counts;
    std::vector<double> expected;  // probabilities
    double chi_square = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson chi-square of observed counts against probabilities. Categories
/// with zero probability only contribute if observed (then p = 0).
GoodnessOfFit chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> probs);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, std::size_t dof);

/// `draws` samples from `sampler` on `side`; compares against weights / sum.
GoodnessOfFit empirical_sampler_distribution(NodeSampler& sampler, Side side, std::span<const double> weights,
                                             std::size_t draws, Rng& rng);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic distribution.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace pagen::stats
