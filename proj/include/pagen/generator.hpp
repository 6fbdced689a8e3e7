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

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pagen/config.hpp"
#include "pagen/network.hpp"
#include "pagen/rng.hpp"
#include "pagen/samplers.hpp"

namespace pagen {

/// Grows a PA network step by step.
///
/// Random decisions within a step are consumed in a fixed order:
///   1. the number of new edges m (only when a new-edge sampler is set);
///   2. for each of the m edges: the scenario, draws of existing endpoints,
///      group labels of endpoints created by the edge, the edge weight, the
///      reciprocal coin and, if it lands, the reciprocal weight.
///
/// All endpoint draws of a step see the preference state as of the end of the
/// previous step; nodes created during a step are not candidates until the
/// next one. Strengths, scores and the sampler are refreshed once per step.
class Generator {
public:
    /// Validates `config` against `initial` and scores the seed network.
    Generator(Network initial, GenerationConfig config);
    Generator(Network initial, GenerationConfig config, Rng rng);

    void run(std::size_t nstep);
    void step();

    const Network& network() const noexcept { return net_; }
    Network release() && { return std::move(net_); }
    const NodeSampler& sampler() const noexcept { return *sampler_; }
    const GenerationConfig& config() const noexcept { return config_; }

private:
    NodeId draw_existing(Side side, std::optional<NodeId> exclude);
    NodeId new_node();
    void add_edge(NodeId source, NodeId target, ScenarioCode code);
    void rescore(NodeId node, double& source_pref, double& target_pref) const;
    void finish_step(std::size_t first_edge, std::size_t first_new_node);
    std::size_t& positive(Side side) { return positive_[static_cast<std::size_t>(side)]; }

    GenerationConfig config_;
    Network net_;
    Rng rng_;
    std::unique_ptr<NodeSampler> sampler_;
    Distribution weight_;
    std::optional<Distribution> newedge_;
    std::optional<std::discrete_distribution<int>> group_dist_;

    // per-step bookkeeping
    std::vector<NodeId> touched_;
    std::vector<NodeId> drawn_[2];
    std::size_t step_edges_ = 1;
    std::size_t positive_[2] = {0, 0};
};

/// Runs `nstep` steps from `initial` with RNG seeded by `config.seed`.
Network generate(std::size_t nstep, Network initial, const GenerationConfig& config);

/// Independent replicas. Replica r uses the sub-stream
/// Rng::stream_seed(config.seed, r); results do not depend on `threads`.
std::vector<Network> generate_replicas(std::size_t nstep, const Network& initial, const GenerationConfig& config,
                                       std::size_t count, unsigned threads = 1);

/// Without-replacement draws of `m` distinct nodes from a frozen sampler by
/// rejection, never removing mass from the sampler. Throws NoCandidateError
/// if fewer than `m` nodes carry positive preference, RejectionLimitError if
/// 10^4 * m attempts are exceeded.
std::vector<NodeId> sample_distinct(NodeSampler& sampler, Side side, std::size_t m, Rng& rng,
                                    std::optional<NodeId> exclude = std::nullopt);

}  // namespace pagen
