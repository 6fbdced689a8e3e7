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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pagen/errors.hpp"
#include "pagen/kernels.hpp"
#include "pagen/samplers.hpp"

namespace pagen {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::binary: return "binary";
        case Method::linear: return "linear";
        case Method::bagx: return "bagx";
        case Method::bag: return "bag";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view s) noexcept {
    for (Method m : {Method::binary, Method::linear, Method::bagx, Method::bag}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

void NodeSampler::check_mutable() const {
    if (frozen_) throw std::logic_error("preference state mutated while frozen (within a generation step)");
}

void NodeSampler::check_pref(NodeId node, double source_pref, double target_pref) {
    if (source_pref >= 0.0 && target_pref >= 0.0) return;
    std::ostringstream os;
    os << "negative preference for node " << node + 1 << " (source " << source_pref << ", target " << target_pref
       << ")";
    throw NegativePreferenceError(os.str());
}

NodeId NodeSampler::sample(Side side, Rng& rng) {
    const double t = total(side);
    if (!(t > 0.0)) {
        throw NoCandidateError(std::string("no node has positive ") +
                               (side == Side::source ? "source" : "target") + " preference");
    }
    return locate(side, t * rng.uniform_pos());
}

std::size_t BinarySampler::candidate_count(Side side) const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < tree_.size(); ++j) n += tree_.theta(side, static_cast<NodeId>(j)) > 0.0;
    return n;
}

// ---------------------------------------------------------------------------

std::size_t LinearSampler::candidate_count(Side side) const {
    const auto& prefs = lanes_[static_cast<std::size_t>(side)].prefs;
    return static_cast<std::size_t>(std::count_if(prefs.begin(), prefs.end(), [](double p) { return p > 0.0; }));
}

void LinearSampler::reserve(std::size_t nodes, std::size_t) {
    for (auto& lane : lanes_) {
        lane.order.reserve(nodes);
        lane.prefs.reserve(nodes);
        lane.position.reserve(nodes);
    }
}

void LinearSampler::do_add_node(double sp, double tp) {
    const std::array<double, 2> p{sp, tp};
    for (std::size_t i = 0; i < 2; ++i) {
        Lane& lane = lanes_[i];
        const auto node = static_cast<NodeId>(lane.position.size());
        lane.position.push_back(static_cast<std::uint32_t>(lane.order.size()));
        lane.order.push_back(node);
        lane.prefs.push_back(p[i]);
        lane.total += p[i];
    }
}

void LinearSampler::set(Lane& lane, NodeId node, double pref) {
    double& slot = lane.prefs[lane.position[node]];
    lane.total += pref - slot;
    slot = pref;
    // The running total drifts with every +/- pair; resum once per |V| updates,
    // which keeps the cost at O(1) amortized against O(|V|) scans.
    if (++lane.drift_updates >= lane.prefs.size()) {
        lane.total = kernels::sum(lane.prefs);
        lane.drift_updates = 0;
    }
}

void LinearSampler::do_update(NodeId node, double sp, double tp) {
    if (node >= lanes_[0].position.size()) throw std::out_of_range("LinearSampler::update: node out of range");
    set(lanes_[0], node, sp);
    set(lanes_[1], node, tp);
}

std::size_t LinearSampler::locate_position(const Lane& lane, double u) const {
    std::size_t pos = kernels::scan_subtract(lane.prefs, u);
    if (pos < lane.prefs.size()) return pos;
    // u exceeded the true sum by accumulated rounding in `total`; take the
    // last node that carries mass.
    pos = lane.prefs.size();
    while (pos > 0 && !(lane.prefs[pos - 1] > 0.0)) --pos;
    return pos == 0 ? 0 : pos - 1;
}

NodeId LinearSampler::locate(Side side, double u) const {
    const Lane& lane = lanes_[static_cast<std::size_t>(side)];
    return lane.order[locate_position(lane, u)];
}

NodeId LinearSampler::sample(Side side, Rng& rng) {
    Lane& lane = lanes_[static_cast<std::size_t>(side)];
    if (!(lane.total > 0.0)) {
        throw NoCandidateError(std::string("no node has positive ") +
                               (side == Side::source ? "source" : "target") + " preference");
    }
    const std::size_t pos = locate_position(lane, lane.total * rng.uniform_pos());
    const NodeId node = lane.order[pos];
    if (pos > 0) {
        const NodeId prev = lane.order[pos - 1];
        std::swap(lane.order[pos - 1], lane.order[pos]);
        std::swap(lane.prefs[pos - 1], lane.prefs[pos]);
        lane.position[node] = static_cast<std::uint32_t>(pos - 1);
        lane.position[prev] = static_cast<std::uint32_t>(pos);
    }
    return node;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t ceil_index(double x, std::size_t n) {
    // Maps x in (0, n] to ceil(x) - 1 in [0, n - 1].
    const double c = std::ceil(x);
    if (!(c >= 1.0)) return 0;
    if (c >= static_cast<double>(n)) return n - 1;
    return static_cast<std::size_t>(c) - 1;
}

}  // namespace

BagSampler::BagSampler(LinearForm form, bool directed) : form_(form), directed_(directed) {}

void BagSampler::reserve(std::size_t, std::size_t edges) {
    if (directed_) {
        bags_[0].reserve(edges);
        bags_[1].reserve(edges);
    } else {
        bags_[0].reserve(2 * edges);
    }
}

void BagSampler::do_add_edge(const EdgeRecord& e) {
    if (e.weight != 1.0) throw ConfigError("bag method requires unit edge weights");
    if (directed_) {
        bags_[0].push_back(e.source);
        bags_[1].push_back(e.target);
    } else {
        bags_[0].push_back(e.source);
        bags_[0].push_back(e.target);
    }
}

double BagSampler::total(Side side) const {
    return static_cast<double>(bag(side).size()) + constant(side) * static_cast<double>(nodes_);
}

NodeId BagSampler::locate(Side side, double u) const {
    const auto& b = bag(side);
    const auto mass = static_cast<double>(b.size());
    if (u <= mass && !b.empty()) return b[ceil_index(u, b.size())];
    return static_cast<NodeId>(ceil_index((u - mass) / constant(side), nodes_));
}

namespace {

std::size_t distinct_count(std::span<const NodeId> labels, std::size_t nodes) {
    std::vector<bool> seen(nodes, false);
    std::size_t n = 0;
    for (NodeId v : labels) {
        if (v < nodes && !seen[v]) {
            seen[v] = true;
            ++n;
        }
    }
    return n;
}

}  // namespace

std::size_t BagSampler::candidate_count(Side side) const {
    return constant(side) > 0.0 ? nodes_ : distinct_count(bag(side), nodes_);
}

// ---------------------------------------------------------------------------

BagxSampler::BagxSampler(LinearForm form, bool directed) : form_(form), directed_(directed) {}

void BagxSampler::reserve(std::size_t, std::size_t edges) {
    const std::size_t entries = directed_ ? edges : 2 * edges;
    nu_.reserve(entries + 1);
    owner_[0].reserve(entries);
    if (directed_) owner_[1].reserve(entries);
}

void BagxSampler::do_add_edge(const EdgeRecord& e) {
    if (directed_) {
        nu_.push_back(nu_.back() + e.weight);
        owner_[0].push_back(e.source);
        owner_[1].push_back(e.target);
    } else {
        nu_.push_back(nu_.back() + e.weight);
        owner_[0].push_back(e.source);
        nu_.push_back(nu_.back() + e.weight);
        owner_[0].push_back(e.target);
    }
}

double BagxSampler::total(Side side) const { return nu_.back() + constant(side) * static_cast<double>(nodes_); }

NodeId BagxSampler::locate(Side side, double u) const {
    const double w = nu_.back();
    if (u > w) return static_cast<NodeId>(ceil_index((u - w) / constant(side), nodes_));
    // first k >= 1 with nu[k] >= u, so u lies in (nu[k-1], nu[k]]
    const auto it = std::lower_bound(nu_.begin() + 1, nu_.end(), u);
    const auto entry = static_cast<std::size_t>(std::distance(nu_.begin(), it)) - 1;
    const auto& owners = directed_ ? owner_[static_cast<std::size_t>(side)] : owner_[0];
    return owners[std::min(entry, owners.size() - 1)];
}

std::size_t BagxSampler::candidate_count(Side side) const {
    if (constant(side) > 0.0) return nodes_;
    return distinct_count(directed_ ? owner_[static_cast<std::size_t>(side)] : owner_[0], nodes_);
}

// ---------------------------------------------------------------------------

std::unique_ptr<NodeSampler> make_sampler(Method method, bool directed, std::optional<LinearForm> linear) {
    switch (method) {
        case Method::binary: return std::make_unique<BinarySampler>();
        case Method::linear: return std::make_unique<LinearSampler>();
        case Method::bag:
        case Method::bagx:
            if (!linear) {
                throw ConfigError(std::string(to_string(method)) +
                                  " requires linear preferences of the form strength + constant");
            }
            if (method == Method::bag) return std::make_unique<BagSampler>(*linear, directed);
            return std::make_unique<BagxSampler>(*linear, directed);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace pagen
