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

#include <stdexcept>

#include "pagen/samplers.hpp"

namespace pagen {

void SumTree::refresh(std::size_t j) {
    auto& s = slots_[j];
    for (std::size_t i = 0; i < 2; ++i) s.eta[i] = s.theta[i] + child_eta(2 * j + 1, i) + child_eta(2 * j + 2, i);
}

void SumTree::propagate(std::size_t j) {
    refresh(j);
    while (j > 0) {
        j = (j - 1) / 2;
        refresh(j);
    }
}

void SumTree::push_back(double source_pref, double target_pref) {
    slots_.push_back({{source_pref, target_pref}, {0.0, 0.0}});
    propagate(slots_.size() - 1);
}

void SumTree::update(NodeId node, double source_pref, double target_pref) {
    if (node >= slots_.size()) throw std::out_of_range("SumTree::update: node out of range");
    auto& s = slots_[node];
    if (s.theta[0] == source_pref && s.theta[1] == target_pref) return;
    s.theta = {source_pref, target_pref};
    propagate(node);
}

void SumTree::assign(std::span<const double> source_prefs, std::span<const double> target_prefs) {
    if (source_prefs.size() != target_prefs.size()) throw std::invalid_argument("SumTree::assign: size mismatch");
    slots_.assign(source_prefs.size(), Slot{});
    for (std::size_t j = 0; j < slots_.size(); ++j) slots_[j].theta = {source_prefs[j], target_prefs[j]};
    for (std::size_t j = slots_.size(); j-- > 0;) refresh(j);
}

NodeId SumTree::sample(Side side, double u) const {
    const std::size_t i = idx(side);
    const std::size_t n = slots_.size();
    std::size_t j = 0;
    std::size_t visits = 0;
    while (j < n) {
        ++visits;
        u -= slots_[j].theta[i];
        const std::size_t left = 2 * j + 1;
        const std::size_t right = left + 1;
        const double left_eta = child_eta(left, i);
        if (u <= 0.0) break;
        if (u <= left_eta) {
            j = left;
        } else if (right < n) {
            u -= left_eta;
            j = right;
        } else if (left < n && left_eta > 0.0) {
            // u overshoots the subtree total by rounding only; settle on the
            // last segment of the left subtree.
            u = left_eta;
            j = left;
        } else {
            break;
        }
    }
    last_visits_ = visits;
    return static_cast<NodeId>(j);
}

bool SumTree::check_invariant() const {
    for (std::size_t j = 0; j < slots_.size(); ++j) {
        for (std::size_t i = 0; i < 2; ++i) {
            const double expect = slots_[j].theta[i] + child_eta(2 * j + 1, i) + child_eta(2 * j + 2, i);
            if (slots_[j].eta[i] != expect) return false;
        }
    }
    return true;
}

}  // namespace pagen
