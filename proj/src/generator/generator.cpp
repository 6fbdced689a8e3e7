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

#include "pagen/generator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "pagen/errors.hpp"

namespace pagen {

namespace {

constexpr std::size_t kRetriesPerEdge = 10000;

const char* side_name(Side side) { return side == Side::source ? "source" : "target"; }

}  // namespace

Generator::Generator(Network initial, GenerationConfig config)
    : Generator(std::move(initial), config, Rng(config.seed)) {}

Generator::Generator(Network initial, GenerationConfig config, Rng rng)
    : config_(std::move(config)), net_(std::move(initial)), rng_(rng), weight_(config_.edgeweight) {
    config_.validate(net_);
    if (!config_.newedge.sampler.is_unit_constant()) newedge_.emplace(config_.newedge.sampler);

    if (config_.reciprocal) {
        const auto& pi = config_.reciprocal->group_prob;
        group_dist_.emplace(pi.begin(), pi.end());
        net_.has_groups = true;
        for (std::size_t j = 0; j < net_.nodes.size(); ++j) {
            auto& g = net_.nodes[j].group;
            if (g == 0) g = 1;
            if (g > config_.reciprocal->groups()) {
                throw ConfigError("group " + std::to_string(g) + " exceeds the number of groups",
                                  "/initial/nodegroup/" + std::to_string(j));
            }
        }
    }

    sampler_ = make_sampler(config_.method, net_.directed, config_.preference.linear_form());
    for (std::size_t j = 0; j < net_.nodes.size(); ++j) {
        auto& n = net_.nodes[j];
        rescore(static_cast<NodeId>(j), n.source_pref, n.target_pref);
        sampler_->add_node(n.source_pref, n.target_pref);
        positive(Side::source) += n.source_pref > 0.0;
        positive(Side::target) += n.target_pref > 0.0;
    }
    for (const auto& e : net_.edges) sampler_->add_edge(e);
}

void Generator::rescore(NodeId node, double& source_pref, double& target_pref) const {
    const auto& n = net_.nodes[node];
    try {
        source_pref = config_.preference.source(n.out_strength, n.in_strength);
        target_pref = config_.preference.target(n.out_strength, n.in_strength);
    } catch (const DomainError& e) {
        throw DomainError("preference of node " + std::to_string(node + 1) + ": " + e.what());
    }
    if (source_pref >= 0.0 && target_pref >= 0.0) return;
    std::ostringstream os;
    os << "negative preference at node " << node + 1 << " (outs=" << n.out_strength << ", ins=" << n.in_strength
       << ", source=" << source_pref << ", target=" << target_pref << ")";
    throw NegativePreferenceError(os.str());
}

void Generator::run(std::size_t nstep) {
    // Capacity for the expected growth, so large runs do not pay for
    // repeated reallocation of the node, edge and sampler arrays.
    const auto& sc = config_.scenario;
    const double edges_per_step = std::max(1.0, config_.newedge.sampler.mean()) * (config_.reciprocal ? 2.0 : 1.0);
    const double nodes_per_edge = sc.alpha + sc.gamma + 2.0 * sc.xi + sc.rho;
    const auto steps = static_cast<double>(nstep);
    const auto edges = net_.edges.size() + static_cast<std::size_t>(1.05 * steps * edges_per_step) + 16;
    const auto nodes =
        net_.nodes.size() + static_cast<std::size_t>(1.05 * steps * edges_per_step * nodes_per_edge) + 16;
    net_.edges.reserve(edges);
    net_.nodes.reserve(nodes);
    net_.new_edge_counts.reserve(net_.new_edge_counts.size() + nstep);
    sampler_->reserve(nodes, edges);
    for (std::size_t t = 0; t < nstep; ++t) step();
}

NodeId Generator::draw_existing(Side side, std::optional<NodeId> exclude) {
    const bool directed = net_.directed;
    const bool distinct = directed ? (side == Side::source ? !config_.newedge.snode_replace
                                                           : !config_.newedge.tnode_replace)
                                   : !config_.newedge.node_replace;
    auto& drawn = drawn_[directed ? static_cast<std::size_t>(side) : 0];
    if (distinct && positive(side) <= drawn.size()) {
        throw NoCandidateError("without-replacement sampling needs more distinct " + std::string(side_name(side)) +
                               " nodes than carry positive preference (" + std::to_string(positive(side)) + ")");
    }

    const std::size_t budget = kRetriesPerEdge * step_edges_;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        const NodeId v = sampler_->sample(side, rng_);
        if (exclude && v == *exclude) continue;
        if (distinct) {
            if (std::find(drawn.begin(), drawn.end(), v) != drawn.end()) continue;
            drawn.push_back(v);
        }
        return v;
    }
    throw RejectionLimitError("gave up drawing a " + std::string(side_name(side)) + " node after " +
                              std::to_string(budget) + " rejected attempts");
}

NodeId Generator::new_node() {
    NodeRecord n;
    if (group_dist_) n.group = (*group_dist_)(rng_) + 1;
    net_.nodes.push_back(n);
    return static_cast<NodeId>(net_.nodes.size() - 1);
}

void Generator::add_edge(NodeId source, NodeId target, ScenarioCode code) {
    auto draw_weight = [&] {
        const double w = weight_(rng_);
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw GenerationError("sampled edge weight must be a positive real (got " + std::to_string(w) + ")");
        }
        return w;
    };

    EdgeRecord e{source, target, draw_weight(), code};
    net_.edges.push_back(e);
    net_.accumulate(e);
    touched_.push_back(source);
    touched_.push_back(target);

    if (!config_.reciprocal) return;
    if (e.is_loop() && !config_.reciprocal->selfloop_recip) return;
    const int gs = net_.nodes[source].group;
    const int gt = net_.nodes[target].group;
    const double q = config_.reciprocal->recip_prob[static_cast<std::size_t>(gt - 1)][static_cast<std::size_t>(gs - 1)];
    if (rng_.uniform() < q) {
        EdgeRecord r{target, source, draw_weight(), ScenarioCode::reciprocal};
        net_.edges.push_back(r);
        net_.accumulate(r);
    }
}

void Generator::step() {
    const std::size_t first_edge = net_.edges.size();
    const std::size_t first_new = net_.nodes.size();

    std::size_t m = 1;
    if (newedge_) {
        const double draw = (*newedge_)(rng_);
        if (!(draw >= 1.0) || std::floor(draw) != draw) {
            throw GenerationError("number of new edges must be a positive integer (got " + std::to_string(draw) + ")");
        }
        m = static_cast<std::size_t>(draw);
    }
    step_edges_ = m;
    touched_.clear();
    drawn_[0].clear();
    drawn_[1].clear();

    const auto& sc = config_.scenario;
    sampler_->freeze();
    for (std::size_t k = 0; k < m; ++k) {
        const ScenarioCode code = draw_scenario(sc, rng_.uniform_open());
        NodeId s = 0;
        NodeId t = 0;
        switch (code) {
            case ScenarioCode::alpha:
                t = draw_existing(Side::target, std::nullopt);
                s = new_node();
                break;
            case ScenarioCode::beta:
                if (sc.beta_loop) {
                    s = draw_existing(Side::source, std::nullopt);
                    t = draw_existing(Side::target, std::nullopt);
                } else if (sc.source_first) {
                    s = draw_existing(Side::source, std::nullopt);
                    t = draw_existing(Side::target, s);
                } else {
                    t = draw_existing(Side::target, std::nullopt);
                    s = draw_existing(Side::source, t);
                }
                break;
            case ScenarioCode::gamma:
                s = draw_existing(Side::source, std::nullopt);
                t = new_node();
                break;
            case ScenarioCode::xi:
                s = new_node();
                t = new_node();
                break;
            default:  // rho
                s = new_node();
                t = s;
                break;
        }
        add_edge(s, t, code);
    }
    sampler_->thaw();
    finish_step(first_edge, first_new);
}

void Generator::finish_step(std::size_t first_edge, std::size_t first_new) {
    net_.new_edge_counts.push_back(static_cast<std::uint32_t>(net_.edges.size() - first_edge));

    for (std::size_t j = first_new; j < net_.nodes.size(); ++j) {
        auto& n = net_.nodes[j];
        rescore(static_cast<NodeId>(j), n.source_pref, n.target_pref);
        sampler_->add_node(n.source_pref, n.target_pref);
        positive(Side::source) += n.source_pref > 0.0;
        positive(Side::target) += n.target_pref > 0.0;
    }

    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
    for (NodeId v : touched_) {
        if (v >= first_new) continue;
        auto& n = net_.nodes[v];
        const bool had_source = n.source_pref > 0.0;
        const bool had_target = n.target_pref > 0.0;
        rescore(v, n.source_pref, n.target_pref);
        sampler_->update(v, n.source_pref, n.target_pref);
        positive(Side::source) += (n.source_pref > 0.0) - static_cast<int>(had_source);
        positive(Side::target) += (n.target_pref > 0.0) - static_cast<int>(had_target);
    }

    for (std::size_t i = first_edge; i < net_.edges.size(); ++i) sampler_->add_edge(net_.edges[i]);
}

Network generate(std::size_t nstep, Network initial, const GenerationConfig& config) {
    Generator g(std::move(initial), config);
    g.run(nstep);
    return std::move(g).release();
}

std::vector<Network> generate_replicas(std::size_t nstep, const Network& initial, const GenerationConfig& config,
                                       std::size_t count, unsigned threads) {
    std::vector<Network> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t r = next++; r < count; r = next++) {
            try {
                Generator g(initial, config, Rng(Rng::stream_seed(config.seed, r)));
                g.run(nstep);
                out[r] = std::move(g).release();
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<NodeId> sample_distinct(NodeSampler& sampler, Side side, std::size_t m, Rng& rng,
                                    std::optional<NodeId> exclude) {
    if (sampler.candidate_count(side) < m) {
        throw NoCandidateError("fewer than " + std::to_string(m) + " nodes carry positive " + side_name(side) +
                               " preference");
    }
    std::vector<NodeId> picked;
    picked.reserve(m);
    const std::size_t budget = kRetriesPerEdge * std::max<std::size_t>(m, 1);
    std::size_t attempts = 0;
    while (picked.size() < m) {
        if (attempts++ >= budget) {
            throw RejectionLimitError("gave up after " + std::to_string(budget) + " rejected attempts");
        }
        const NodeId v = sampler.sample(side, rng);
        if (exclude && v == *exclude) continue;
        if (std::find(picked.begin(), picked.end(), v) != picked.end()) continue;
        picked.push_back(v);
    }
    return picked;
}

}  // namespace pagen
