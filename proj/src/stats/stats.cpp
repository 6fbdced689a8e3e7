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

#include "pagen/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pagen/errors.hpp"
#include "pagen/kernels.hpp"

namespace pagen::stats {

AttributeReport verify_node_attributes(const Network& network, const PreferenceSpec& pref, double tolerance) {
    AttributeReport report;
    report.tolerance = tolerance;
    const Strengths s = recompute_strengths(network);
    const std::size_t n = network.nodes.size();
    report.expected.resize(n);

    std::vector<double> stored(n), fresh(n);
    auto column_diff = [&](auto stored_of, auto fresh_of) {
        for (std::size_t j = 0; j < n; ++j) {
            stored[j] = stored_of(network.nodes[j]);
            fresh[j] = fresh_of(report.expected[j]);
        }
        return kernels::max_abs_diff(stored, fresh);
    };

    for (std::size_t j = 0; j < n; ++j) {
        auto& e = report.expected[j];
        e.out_strength = s.out[j];
        e.in_strength = s.in[j];
        e.group = network.nodes[j].group;
        try {
            e.source_pref = pref.source(e.out_strength, e.in_strength);
            e.target_pref = pref.target(e.out_strength, e.in_strength);
        } catch (const DomainError&) {
            e.source_pref = e.target_pref = std::numeric_limits<double>::quiet_NaN();
        }
    }

    report.max_strength_diff = std::max(column_diff([](auto& r) { return r.out_strength; },
                                                    [](auto& r) { return r.out_strength; }),
                                        column_diff([](auto& r) { return r.in_strength; },
                                                    [](auto& r) { return r.in_strength; }));
    report.max_pref_diff = std::max(column_diff([](auto& r) { return r.source_pref; },
                                                [](auto& r) { return r.source_pref; }),
                                    column_diff([](auto& r) { return r.target_pref; },
                                                [](auto& r) { return r.target_pref; }));

    // Locate the worst offender (also catches NaNs, which max ignores).
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& a = network.nodes[j];
        const auto& b = report.expected[j];
        const std::pair<const char*, double> fields[] = {
            {"outs", std::fabs(a.out_strength - b.out_strength)},
            {"ins", std::fabs(a.in_strength - b.in_strength)},
            {"spref", std::fabs(a.source_pref - b.source_pref)},
            {"tpref", std::fabs(a.target_pref - b.target_pref)},
        };
        for (auto [name, d] : fields) {
            if (std::isnan(d) || d > worst) {
                worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
                report.worst_node = static_cast<NodeId>(j);
                report.worst_field = name;
            }
        }
    }
    report.pass = worst <= tolerance;
    if (report.pass) {
        report.worst_node.reset();
        report.worst_field.clear();
    }
    return report;
}

std::vector<std::uint64_t> degrees(const Network& network, DegreeSide side) {
    std::vector<std::uint64_t> d(network.nodes.size(), 0);
    for (const auto& e : network.edges) {
        switch (side) {
            case DegreeSide::in: ++d[e.target]; break;
            case DegreeSide::out: ++d[e.source]; break;
            case DegreeSide::total:
                ++d[e.source];
                ++d[e.target];
                break;
        }
    }
    if (!network.directed && side != DegreeSide::total) {
        // undirected: degree is the total count on either side
        return degrees(network, DegreeSide::total);
    }
    return d;
}

DegreeHistogram degree_histogram(std::span<const std::uint64_t> degs, DegreeSide side) {
    DegreeHistogram h;
    h.side = side;
    h.node_count = degs.size();
    for (auto d : degs) ++h.counts[d];
    std::uint64_t remaining = h.node_count;
    for (auto [deg, count] : h.counts) {
        h.ccdf.emplace_back(deg, static_cast<double>(remaining) / static_cast<double>(h.node_count));
        remaining -= count;
    }
    return h;
}

DegreeHistogram degree_histogram(const Network& network, DegreeSide side) {
    const auto d = degrees(network, side);
    return degree_histogram(d, side);
}

namespace {

double hill(std::vector<double>& values, std::size_t k) {
    // largest k+1 values to the front, descending
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end(), std::greater<>());
    const double threshold = values[k];
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::log(values[i] / threshold);
    if (!(acc > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(k) / acc;
}

}  // namespace

TailEstimate hill_tail(std::span<const double> sample, double k_fraction, std::size_t bootstrap, std::uint64_t seed) {
    std::vector<double> pos;
    pos.reserve(sample.size());
    for (double x : sample) {
        if (x > 0.0) pos.push_back(x);
    }
    if (pos.size() < 100) throw std::invalid_argument("tail estimate needs at least 100 positive values");
    if (!(k_fraction > 0.0 && k_fraction < 1.0)) throw std::invalid_argument("k_fraction must lie in (0, 1)");
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(k_fraction * static_cast<double>(pos.size())));

    std::vector<double> work = pos;
    const double alpha = hill(work, k);
    if (std::isnan(alpha)) throw std::invalid_argument("insufficient tail mass: the largest values are all equal");

    TailEstimate est;
    est.exponent = 1.0 + alpha;
    est.k = k;
    if (bootstrap > 1) {
        Rng rng(seed);
        double sum = 0.0, sum_sq = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < bootstrap; ++b) {
            for (auto& x : work) x = pos[rng.below(pos.size())];
            const double a = hill(work, k);
            if (std::isnan(a)) continue;
            sum += a;
            sum_sq += a * a;
            ++used;
        }
        if (used > 1) {
            const double mean = sum / static_cast<double>(used);
            est.std_error = std::sqrt(std::max(0.0, (sum_sq - static_cast<double>(used) * mean * mean) /
                                                        static_cast<double>(used - 1)));
        }
    }
    return est;
}

TailEstimate tail_index(const DegreeHistogram& hist, double k_fraction, std::size_t bootstrap, std::uint64_t seed) {
    std::vector<double> values;
    values.reserve(hist.node_count);
    for (auto [deg, count] : hist.counts) values.insert(values.end(), count, static_cast<double>(deg));
    return hill_tail(values, k_fraction, bootstrap, seed);
}

double chi_square_sf(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

GoodnessOfFit chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> probs) {
    if (counts.size() != probs.size()) throw std::invalid_argument("counts and probabilities differ in length");
    GoodnessOfFit g;
    g.counts.assign(counts.begin(), counts.end());
    g.expected.assign(probs.begin(), probs.end());
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    std::size_t categories = 0;
    bool impossible = false;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (probs[i] > 0.0) {
            const double e = total * probs[i];
            const double d = static_cast<double>(counts[i]) - e;
            g.chi_square += d * d / e;
            ++categories;
        } else if (counts[i] > 0) {
            impossible = true;
        }
    }
    g.dof = categories > 0 ? categories - 1 : 0;
    g.p_value = impossible ? 0.0 : chi_square_sf(g.chi_square, g.dof);
    return g;
}

GoodnessOfFit empirical_sampler_distribution(NodeSampler& sampler, Side side, std::span<const double> weights,
                                             std::size_t draws, Rng& rng) {
    std::vector<std::uint64_t> counts(weights.size(), 0);
    for (std::size_t i = 0; i < draws; ++i) {
        const NodeId v = sampler.sample(side, rng);
        if (v >= counts.size()) throw std::out_of_range("sampler returned an unknown node");
        ++counts[v];
    }
    const double total = kernels::sum(weights);
    std::vector<double> probs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / total;
    return chi_square_test(counts, probs);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult r;
    r.statistic = d;
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    if (lambda < 1e-3) {
        r.p_value = 1.0;
        return r;
    }
    double q = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        q += term;
        if (std::fabs(term) < 1e-12) break;
        sign = -sign;
    }
    r.p_value = std::clamp(2.0 * q, 0.0, 1.0);
    return r;
}

}  // namespace pagen::stats
