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

#include "pagen/preference.hpp"

#include <cmath>
#include <sstream>

#include "pagen/errors.hpp"

namespace pagen {

namespace {

double power_term(double coef, double x, double expo) {
    if (coef == 0.0) return 0.0;
    if (expo == 1.0) return coef * x;
    if (expo == 0.0) return coef;
    return coef * std::pow(x, expo);
}

}  // namespace

double default_preference(std::span<const double> params, double x, double y) {
    double v = 0.0;
    if (params.size() == 5) {
        v = power_term(params[0], x, params[1]) + power_term(params[2], y, params[3]) + params[4];
    } else if (params.size() == 2) {
        v = power_term(1.0, x, params[0]) + params[1];
    } else {
        throw ConfigError("preference parameter vector must have 5 (directed) or 2 (undirected) entries");
    }
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite preference value at x=" << x << ", y=" << y;
        throw DomainError(os.str());
    }
    return v;
}

PreferenceSpec PreferenceSpec::default_undirected(std::array<double, 2> p) {
    PreferenceSpec spec;
    spec.kind = PrefKind::default_undirected;
    spec.params = p;
    return spec;
}

PreferenceSpec PreferenceSpec::custom_directed(std::string_view spref, std::string_view tpref) {
    PreferenceSpec spec;
    spec.kind = PrefKind::custom;
    spec.spref = parse_preference(spref.empty() ? "outs + 1" : spref, PrefMode::directed);
    spec.tpref = parse_preference(tpref.empty() ? "ins + 1" : tpref, PrefMode::directed);
    return spec;
}

PreferenceSpec PreferenceSpec::custom_undirected(std::string_view pref) {
    PreferenceSpec spec;
    spec.kind = PrefKind::custom;
    spec.pref = parse_preference(pref.empty() ? "s + 1" : pref, PrefMode::undirected);
    return spec;
}

bool PreferenceSpec::directed() const noexcept {
    switch (kind) {
        case PrefKind::default_directed: return true;
        case PrefKind::default_undirected: return false;
        case PrefKind::custom: return !pref.has_value();
    }
    return true;
}

double PreferenceSpec::source(double outs, double ins) const {
    switch (kind) {
        case PrefKind::default_directed: return default_preference(sparams, outs, ins);
        case PrefKind::default_undirected: return default_preference(params, outs);
        case PrefKind::custom: return pref ? pref->evaluate(outs, outs) : spref->evaluate(outs, ins);
    }
    return 0.0;
}

double PreferenceSpec::target(double outs, double ins) const {
    switch (kind) {
        case PrefKind::default_directed: return default_preference(tparams, outs, ins);
        case PrefKind::default_undirected: return default_preference(params, outs);
        case PrefKind::custom: return pref ? pref->evaluate(outs, outs) : tpref->evaluate(outs, ins);
    }
    return 0.0;
}

std::optional<LinearForm> PreferenceSpec::linear_form() const {
    switch (kind) {
        case PrefKind::default_directed: {
            const auto& s = sparams;
            const auto& t = tparams;
            const bool source_ok = s[0] == 1.0 && s[1] == 1.0 && s[2] == 0.0;
            const bool target_ok = t[0] == 0.0 && t[2] == 1.0 && t[3] == 1.0;
            if (source_ok && target_ok && s[4] >= 0.0 && t[4] >= 0.0) return LinearForm{s[4], t[4]};
            return std::nullopt;
        }
        case PrefKind::default_undirected:
            if (params[0] == 1.0 && params[1] >= 0.0) return LinearForm{params[1], params[1]};
            return std::nullopt;
        case PrefKind::custom: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace pagen
