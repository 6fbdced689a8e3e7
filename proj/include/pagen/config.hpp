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
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "pagen/network.hpp"
#include "pagen/preference.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"

namespace pagen {

/// A distribution for edge weights or for the number of new edges per step.
struct DistributionSpec {
    enum class Kind { constant, gamma, poisson_plus_one, uniform, discrete };

    Kind kind = Kind::constant;
    double value = 1.0;              // constant
    double shape = 1.0, scale = 1.0; // gamma
    double lambda = 1.0;             // poisson_plus_one: 1 + Poisson(lambda)
    double lo = 0.0, hi = 1.0;       // uniform
    std::vector<double> values, probs;

    static DistributionSpec constant(double v = 1.0);
    static DistributionSpec gamma(double shape, double scale);
    static DistributionSpec poisson_plus_one(double lambda);
    static DistributionSpec uniform(double lo, double hi);
    static DistributionSpec discrete(std::vector<double> values, std::vector<double> probs);

    /// Expected value; used only for capacity hints.
    double mean() const noexcept;

    bool is_unit_constant() const noexcept { return kind == Kind::constant && value == 1.0; }

    /// `integer` requests the positive-integer support needed for new-edge
    /// counts; otherwise the support must be positive reals.
    void validate(const std::string& path, bool integer) const;
};

/// Prepared sampler for a DistributionSpec.
class Distribution {
public:
    explicit Distribution(const DistributionSpec& spec);
    double operator()(Rng& rng);
    const DistributionSpec& spec() const noexcept { return spec_; }

private:
    DistributionSpec spec_;
    std::variant<std::monostate, std::gamma_distribution<double>, std::poisson_distribution<long>,
                 std::discrete_distribution<std::size_t>>
        dist_;
};

struct ScenarioConfig {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    double xi = 0.0;
    double rho = 0.0;
    bool beta_loop = true;
    bool source_first = true;

    void validate() const;
};

/// Draws the edge-creation scenario for psi in (0, 1). Thresholds are checked
/// in the order alpha, beta, gamma, xi, rho with closed upper ends.
ScenarioCode draw_scenario(const ScenarioConfig& config, double psi) noexcept;

struct NewEdgeConfig {
    DistributionSpec sampler = DistributionSpec::constant(1.0);
    bool snode_replace = true;
    bool tnode_replace = true;
    bool node_replace = true;  // undirected networks
};

struct ReciprocalConfig {
    std::vector<double> group_prob;
    /// recip_prob[k][l]: probability that a new edge whose target is in group
    /// k+1 and source in group l+1 gets a reciprocal edge.
    std::vector<std::vector<double>> recip_prob;
    bool selfloop_recip = false;

    int groups() const noexcept { return static_cast<int>(group_prob.size()); }
    void validate() const;
};

struct GenerationConfig {
    ScenarioConfig scenario;
    DistributionSpec edgeweight = DistributionSpec::constant(1.0);
    NewEdgeConfig newedge;
    PreferenceSpec preference;
    std::optional<ReciprocalConfig> reciprocal;
    Method method = Method::binary;
    std::uint64_t seed = 0;

    /// Checks every block plus the method preconditions against `initial`.
    /// Throws ConfigError naming the offending field.
    void validate(const Network& initial) const;
};

}  // namespace pagen
