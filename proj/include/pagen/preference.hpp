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
#include <optional>
#include <span>
#include <string>

#include "pagen/expression.hpp"

namespace pagen {

enum class PrefKind { default_directed, default_undirected, custom };

/// a1 * x^a2 + a3 * y^a4 + a5 for five parameters, x^b1 + b2 for two.
/// 0^0 is 1. Throws DomainError on a non-finite result.
double default_preference(std::span<const double> params, double x, double y = 0.0);

/// Constants of a preference that is exactly "strength + c" on each side,
/// which is what the bag and bagx samplers need.
struct LinearForm {
    double source_constant = 0.0;
    double target_constant = 0.0;
};

/// Source and target preference functions of node strengths.
struct PreferenceSpec {
    PrefKind kind = PrefKind::default_directed;
    std::array<double, 5> sparams{1, 1, 0, 0, 1};
    std::array<double, 5> tparams{0, 0, 1, 1, 1};
    std::array<double, 2> params{1, 1};
    std::optional<ExpressionTree> spref;  // custom, directed
    std::optional<ExpressionTree> tpref;  // custom, directed
    std::optional<ExpressionTree> pref;   // custom, undirected

    static PreferenceSpec default_directed() { return {}; }
    static PreferenceSpec default_undirected(std::array<double, 2> p = {1, 1});
    /// Custom directed preferences; empty strings fall back to "outs + 1" / "ins + 1".
    static PreferenceSpec custom_directed(std::string_view spref, std::string_view tpref);
    static PreferenceSpec custom_undirected(std::string_view pref);

    bool directed() const noexcept;
    double source(double outs, double ins) const;
    double target(double outs, double ins) const;
    std::optional<LinearForm> linear_form() const;
};

}  // namespace pagen
