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

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pagen/network.hpp"
#include "pagen/preference.hpp"
#include "pagen/rng.hpp"

namespace pagen {

/// Which preference a draw uses: source (theta_1) or target (theta_2).
enum class Side : std::uint8_t { source = 0, target = 1 };

enum class Method { binary, linear, bagx, bag };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view s) noexcept;

/// Complete binary tree over nodes in creation order, stored as an array in
/// heap layout: slot j has children 2j+1 and 2j+2 and parent (j-1)/2.
///
/// Each slot keeps its own scores theta and the subtree totals eta. Every
/// mutation recomputes eta along the root path from the children, so
/// eta(j) == theta(j) + eta(left) + eta(right) holds exactly in floating point
/// after each call.
class SumTree {
public:
    void reserve(std::size_t n) { slots_.reserve(n); }

    /// Appends the next node in creation order.
    void push_back(double source_pref, double target_pref);
    void update(NodeId node, double source_pref, double target_pref);

    /// Bulk construction: sets all thetas and rebuilds eta bottom-up in O(n).
    void assign(std::span<const double> source_prefs, std::span<const double> target_prefs);

    /// Node whose segment contains u, for u in (0, total(side)]. Visits the
    /// slot's own score first, then the left subtree, then the right one.
    NodeId sample(Side side, double u) const;

    double theta(Side side, NodeId node) const { return slots_[node].theta[idx(side)]; }
    double eta(Side side, NodeId node) const { return slots_[node].eta[idx(side)]; }
    double total(Side side) const { return slots_.empty() ? 0.0 : slots_[0].eta[idx(side)]; }
    std::size_t size() const noexcept { return slots_.size(); }

    /// Slots inspected by the most recent sample() call.
    std::size_t last_visits() const noexcept { return last_visits_; }

    /// True iff the eta recursion holds exactly at every slot.
    bool check_invariant() const;

private:
    struct Slot {
        std::array<double, 2> theta{};
        std::array<double, 2> eta{};
    };
    static constexpr std::size_t idx(Side s) { return static_cast<std::size_t>(s); }
    double child_eta(std::size_t c, std::size_t side) const { return c < slots_.size() ? slots_[c].eta[side] : 0.0; }
    void refresh(std::size_t j);
    void propagate(std::size_t j);

    std::vector<Slot> slots_;
    mutable std::size_t last_visits_ = 0;
};

/// Common contract of the four node-sampling engines.
///
/// The generator freezes a sampler for the duration of a step; any preference
/// mutation while frozen is a logic error. Nodes and edges registered after a
/// step become candidates from the next step on.
class NodeSampler {
public:
    virtual ~NodeSampler() = default;

    void add_node(double source_pref, double target_pref) {
        check_mutable();
        check_pref(static_cast<NodeId>(size()), source_pref, target_pref);
        do_add_node(source_pref, target_pref);
    }
    void update(NodeId node, double source_pref, double target_pref) {
        check_mutable();
        check_pref(node, source_pref, target_pref);
        ++updates_;
        do_update(node, source_pref, target_pref);
    }
    void add_edge(const EdgeRecord& e) {
        check_mutable();
        do_add_edge(e);
    }

    /// Draws a node with probability proportional to its preference on `side`.
    /// Throws NoCandidateError if all preferences are zero.
    virtual NodeId sample(Side side, Rng& rng);

    /// Deterministic lookup of the node owning position u in (0, total(side)].
    virtual NodeId locate(Side side, double u) const = 0;

    virtual double total(Side side) const = 0;
    virtual std::size_t size() const = 0;
    virtual Method method() const = 0;

    /// Number of nodes that can be drawn on `side` (positive preference). O(n).
    virtual std::size_t candidate_count(Side side) const = 0;

    /// Capacity hint for the final node and edge counts.
    virtual void reserve(std::size_t /*nodes*/, std::size_t /*edges*/) {}

    void freeze() noexcept { frozen_ = true; }
    void thaw() noexcept { frozen_ = false; }
    bool frozen() const noexcept { return frozen_; }
    std::size_t update_count() const noexcept { return updates_; }

protected:
    virtual void do_add_node(double source_pref, double target_pref) = 0;
    virtual void do_update(NodeId node, double source_pref, double target_pref) = 0;
    virtual void do_add_edge(const EdgeRecord&) {}

private:
    void check_mutable() const;
    static void check_pref(NodeId node, double source_pref, double target_pref);

    bool frozen_ = false;
    std::size_t updates_ = 0;
};

class BinarySampler final : public NodeSampler {
public:
    NodeId locate(Side side, double u) const override { return tree_.sample(side, u); }
    double total(Side side) const override { return tree_.total(side); }
    std::size_t size() const override { return tree_.size(); }
    Method method() const override { return Method::binary; }
    std::size_t candidate_count(Side side) const override;
    const SumTree& tree() const noexcept { return tree_; }
    void reserve(std::size_t nodes, std::size_t) override { tree_.reserve(nodes); }

protected:
    void do_add_node(double sp, double tp) override { tree_.push_back(sp, tp); }
    void do_update(NodeId node, double sp, double tp) override { tree_.update(node, sp, tp); }

private:
    SumTree tree_;
};

/// Linear search over preference scores kept in a per-side visit order.
/// After each draw the chosen node swaps places with its predecessor, so
/// frequently drawn nodes drift to the front and scans exit early.
class LinearSampler final : public NodeSampler {
public:
    NodeId sample(Side side, Rng& rng) override;
    NodeId locate(Side side, double u) const override;
    double total(Side side) const override { return lanes_[static_cast<std::size_t>(side)].total; }
    std::size_t size() const override { return lanes_[0].order.size(); }
    Method method() const override { return Method::linear; }
    std::size_t candidate_count(Side side) const override;

    /// Node ids in current visit order.
    void reserve(std::size_t nodes, std::size_t edges) override;
    std::span<const NodeId> visit_order(Side side) const { return lanes_[static_cast<std::size_t>(side)].order; }

protected:
    void do_add_node(double sp, double tp) override;
    void do_update(NodeId node, double sp, double tp) override;

private:
    struct Lane {
        std::vector<NodeId> order;           // visit position -> node
        std::vector<double> prefs;           // visit position -> score
        std::vector<std::uint32_t> position; // node -> visit position
        double total = 0.0;
        std::size_t drift_updates = 0;
    };
    std::size_t locate_position(const Lane& lane, double u) const;
    void set(Lane& lane, NodeId node, double pref);

    std::array<Lane, 2> lanes_;
};

/// Unweighted "strength + c" preferences: a bag holding each node label once
/// per unit of degree on the relevant side, plus a uniform branch carrying
/// the constant mass c * |V|.
class BagSampler final : public NodeSampler {
public:
    BagSampler(LinearForm form, bool directed);

    NodeId locate(Side side, double u) const override;
    double total(Side side) const override;
    std::size_t size() const override { return nodes_; }
    Method method() const override { return Method::bag; }
    std::size_t candidate_count(Side side) const override;
    std::size_t bag_size(Side side) const { return bag(side).size(); }
    void reserve(std::size_t nodes, std::size_t edges) override;

protected:
    void do_add_node(double, double) override { ++nodes_; }
    void do_update(NodeId, double, double) override {}
    void do_add_edge(const EdgeRecord& e) override;

private:
    const std::vector<NodeId>& bag(Side side) const {
        return directed_ ? bags_[static_cast<std::size_t>(side)] : bags_[0];
    }
    double constant(Side side) const { return side == Side::source ? form_.source_constant : form_.target_constant; }

    LinearForm form_;
    bool directed_;
    std::array<std::vector<NodeId>, 2> bags_;
    std::size_t nodes_ = 0;
};

/// Weighted "strength + c" preferences via the cumulative edge-weight vector
/// nu (nu[0] = 0, nu.back() = total weight W). A draw tau in (0, W + c|V|]
/// beyond W picks a uniform node; otherwise the edge l with
/// tau in (nu[l], nu[l+1]] is found by binary search and its source (or
/// target) is returned. Undirected networks use one entry per edge endpoint.
class BagxSampler final : public NodeSampler {
public:
    BagxSampler(LinearForm form, bool directed);

    NodeId locate(Side side, double u) const override;
    double total(Side side) const override;
    std::size_t size() const override { return nodes_; }
    Method method() const override { return Method::bagx; }
    std::size_t candidate_count(Side side) const override;
    std::span<const double> cumulative() const noexcept { return nu_; }
    void reserve(std::size_t nodes, std::size_t edges) override;

protected:
    void do_add_node(double, double) override { ++nodes_; }
    void do_update(NodeId, double, double) override {}
    void do_add_edge(const EdgeRecord& e) override;

private:
    double constant(Side side) const { return side == Side::source ? form_.source_constant : form_.target_constant; }

    LinearForm form_;
    bool directed_;
    std::vector<double> nu_{0.0};
    std::array<std::vector<NodeId>, 2> owner_;
    std::size_t nodes_ = 0;
};

/// Builds an engine. bag and bagx need `linear` (see PreferenceSpec::linear_form).
std::unique_ptr<NodeSampler> make_sampler(Method method, bool directed, std::optional<LinearForm> linear = std::nullopt);

}  // namespace pagen
