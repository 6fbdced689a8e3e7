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

#include "pagen/config.hpp"

#include <cmath>
#include <numeric>

#include "pagen/errors.hpp"

namespace pagen {

namespace {

constexpr double kSumTolerance = 1e-10;

void check_probability(double p, const std::string& path) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("probability must lie in [0, 1]", path);
}

bool is_positive_integer(double v) { return v >= 1.0 && std::floor(v) == v && std::isfinite(v); }

}  // namespace

DistributionSpec DistributionSpec::constant(double v) {
    DistributionSpec d;
    d.value = v;
    return d;
}

DistributionSpec DistributionSpec::gamma(double shape, double scale) {
    DistributionSpec d;
    d.kind = Kind::gamma;
    d.shape = shape;
    d.scale = scale;
    return d;
}

DistributionSpec DistributionSpec::poisson_plus_one(double lambda) {
    DistributionSpec d;
    d.kind = Kind::poisson_plus_one;
    d.lambda = lambda;
    return d;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
    DistributionSpec d;
    d.kind = Kind::uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

DistributionSpec DistributionSpec::discrete(std::vector<double> values, std::vector<double> probs) {
    DistributionSpec d;
    d.kind = Kind::discrete;
    d.values = std::move(values);
    d.probs = std::move(probs);
    return d;
}

double DistributionSpec::mean() const noexcept {
    switch (kind) {
        case Kind::constant: return value;
        case Kind::gamma: return shape * scale;
        case Kind::poisson_plus_one: return 1.0 + lambda;
        case Kind::uniform: return 0.5 * (lo + hi);
        case Kind::discrete: {
            double m = 0.0;
            for (std::size_t i = 0; i < values.size() && i < probs.size(); ++i) m += values[i] * probs[i];
            return m;
        }
    }
    return value;
}

void DistributionSpec::validate(const std::string& path, bool integer) const {
    switch (kind) {
        case Kind::constant:
            if (integer ? !is_positive_integer(value) : !(value > 0.0 && std::isfinite(value))) {
                throw ConfigError(integer ? "constant must be a positive integer" : "constant must be positive",
                                  path + "/value");
            }
            return;
        case Kind::gamma:
            if (integer) throw ConfigError("gamma is not a distribution over positive integers", path + "/type");
            if (!(shape > 0.0)) throw ConfigError("shape must be positive", path + "/shape");
            if (!(scale > 0.0)) throw ConfigError("scale must be positive", path + "/scale");
            return;
        case Kind::poisson_plus_one:
            if (!(lambda >= 0.0 && std::isfinite(lambda))) throw ConfigError("lambda must be nonnegative", path + "/lambda");
            return;
        case Kind::uniform:
            if (integer) throw ConfigError("uniform is not a distribution over positive integers", path + "/type");
            if (!(lo > 0.0)) throw ConfigError("lower bound must be positive", path + "/lo");
            if (!(hi >= lo) || !std::isfinite(hi)) throw ConfigError("upper bound must be >= lower bound", path + "/hi");
            return;
        case Kind::discrete: {
            if (values.empty() || values.size() != probs.size()) {
                throw ConfigError("values and probs must be nonempty and of equal length", path);
            }
            for (std::size_t i = 0; i < values.size(); ++i) {
                const double v = values[i];
                if (integer ? !is_positive_integer(v) : !(v > 0.0 && std::isfinite(v))) {
                    throw ConfigError(integer ? "value must be a positive integer" : "value must be positive",
                                      path + "/values/" + std::to_string(i));
                }
                check_probability(probs[i], path + "/probs/" + std::to_string(i));
            }
            const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
            if (std::fabs(total - 1.0) > kSumTolerance) throw ConfigError("probs must sum to 1", path + "/probs");
            return;
        }
    }
}

Distribution::Distribution(const DistributionSpec& spec) : spec_(spec) {
    using Kind = DistributionSpec::Kind;
    switch (spec.kind) {
        case Kind::gamma: dist_ = std::gamma_distribution<double>(spec.shape, spec.scale); break;
        case Kind::poisson_plus_one:
            if (spec.lambda > 0.0) dist_ = std::poisson_distribution<long>(spec.lambda);
            break;
        case Kind::discrete:
            dist_ = std::discrete_distribution<std::size_t>(spec.probs.begin(), spec.probs.end());
            break;
        default: break;
    }
}

double Distribution::operator()(Rng& rng) {
    using Kind = DistributionSpec::Kind;
    switch (spec_.kind) {
        case Kind::constant: return spec_.value;
        case Kind::gamma: return std::get<std::gamma_distribution<double>>(dist_)(rng);
        case Kind::poisson_plus_one:
            if (spec_.lambda == 0.0) return 1.0;
            return 1.0 + static_cast<double>(std::get<std::poisson_distribution<long>>(dist_)(rng));
        case Kind::uniform: return spec_.lo + (spec_.hi - spec_.lo) * rng.uniform_pos();
        case Kind::discrete: return spec_.values[std::get<std::discrete_distribution<std::size_t>>(dist_)(rng)];
    }
    return spec_.value;
}

void ScenarioConfig::validate() const {
    check_probability(alpha, "/scenario/alpha");
    check_probability(beta, "/scenario/beta");
    check_probability(gamma, "/scenario/gamma");
    check_probability(xi, "/scenario/xi");
    check_probability(rho, "/scenario/rho");
    const double total = alpha + beta + gamma + xi + rho;
    if (std::fabs(total - 1.0) > kSumTolerance) {
        throw ConfigError("alpha + beta + gamma + xi + rho must equal 1 (got " + std::to_string(total) + ")",
                          "/scenario");
    }
    if (beta == 1.0) throw ConfigError("beta = 1 is not allowed (no new nodes would ever be created)", "/scenario/beta");
}

ScenarioCode draw_scenario(const ScenarioConfig& c, double psi) noexcept {
    const double probs[5] = {c.alpha, c.beta, c.gamma, c.xi, c.rho};
    double cumulative = 0.0;
    int last_positive = 0;
    for (int k = 0; k < 5; ++k) {
        cumulative += probs[k];
        if (probs[k] > 0.0) {
            last_positive = k;
            if (psi <= cumulative) return static_cast<ScenarioCode>(k + 1);
        }
    }
    // psi beyond a total that rounded below 1
    return static_cast<ScenarioCode>(last_positive + 1);
}

void ReciprocalConfig::validate() const {
    const std::size_t k = group_prob.size();
    if (k == 0) throw ConfigError("group_prob must have at least one entry", "/reciprocal/group_prob");
    for (std::size_t i = 0; i < k; ++i) check_probability(group_prob[i], "/reciprocal/group_prob/" + std::to_string(i));
    const double total = std::accumulate(group_prob.begin(), group_prob.end(), 0.0);
    if (std::fabs(total - 1.0) > kSumTolerance) throw ConfigError("group_prob must sum to 1", "/reciprocal/group_prob");
    if (recip_prob.size() != k) {
        throw ConfigError("recip_prob must be a " + std::to_string(k) + "x" + std::to_string(k) + " matrix",
                          "/reciprocal/recip_prob");
    }
    for (std::size_t i = 0; i < k; ++i) {
        const std::string row = "/reciprocal/recip_prob/" + std::to_string(i);
        if (recip_prob[i].size() != k) throw ConfigError("row has wrong length", row);
        for (std::size_t j = 0; j < k; ++j) check_probability(recip_prob[i][j], row + "/" + std::to_string(j));
    }
}

void GenerationConfig::validate(const Network& initial) const {
    scenario.validate();
    edgeweight.validate("/edgeweight/sampler", false);
    newedge.sampler.validate("/newedge/sampler", true);
    if (reciprocal) reciprocal->validate();

    if (preference.directed() != initial.directed) {
        throw ConfigError(initial.directed ? "directed network needs directed preference functions (sparams/tparams or "
                                             "spref/tpref)"
                                           : "undirected network needs an undirected preference function (params or pref)",
                          "/preference");
    }

    if (method == Method::bag || method == Method::bagx) {
        const auto name = std::string(to_string(method));
        if (!preference.linear_form()) {
            throw ConfigError(name + " requires default preferences of the form strength + constant "
                                     "(sparams = (1, 1, 0, *, c), tparams = (0, *, 1, 1, c), or params = (1, c))",
                              "/preference");
        }
        if (method == Method::bag) {
            if (!edgeweight.is_unit_constant()) throw ConfigError("bag requires unweighted edges", "/edgeweight");
            for (std::size_t i = 0; i < initial.edges.size(); ++i) {
                if (initial.edges[i].weight != 1.0) {
                    throw ConfigError("bag requires an unweighted initial network",
                                      "/initial/edgeweight/" + std::to_string(i));
                }
            }
        }
    }
}

}  // namespace pagen
