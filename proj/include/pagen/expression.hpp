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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pagen {

/// Which variables an expression may reference: `outs`/`ins` for directed
/// networks, `s` for undirected ones.
enum class PrefMode { directed, undirected };

enum class ExprOp : std::uint8_t {
    literal,
    var_outs,
    var_ins,
    var_s,
    neg,
    add,
    sub,
    mul,
    div,
    pow,
    log,
    exp,
    sqrt,
    abs,
    lt,
    le,
    gt,
    ge,
    eq,
    cond,  // if(test, then, else)
};

struct ExprNode {
    ExprOp op = ExprOp::literal;
    double value = 0.0;
    std::array<std::int32_t, 3> child{-1, -1, -1};
};

/// A parsed preference expression over node strengths.
///
/// The tree is kept in an arena (`nodes()`, `root()`) for inspection and
/// printing; evaluation runs a flattened stack program compiled at parse time,
/// with jumps for the conditional so that an untaken branch is never
/// evaluated (e.g. `if(outs > 0, log(outs), 0)` is total).
class ExpressionTree {
public:
    ExpressionTree() = default;

    /// Value at the given strengths. In undirected mode `s` reads `outs` and
    /// `ins` is ignored. Throws DomainError for log of a nonpositive value,
    /// square root of a negative value, division by zero or a non-finite
    /// result.
    double evaluate(double outs, double ins) const;

    /// Canonical text: fully parenthesized binary operators, shortest
    /// round-trip literals. parse(to_string()) reproduces the same tree.
    std::string to_string() const;

    PrefMode mode() const noexcept { return mode_; }
    const std::string& source_text() const noexcept { return text_; }
    const std::vector<ExprNode>& nodes() const noexcept { return nodes_; }
    std::int32_t root() const noexcept { return root_; }

    /// Structural equality (ignores the original source text).
    friend bool operator==(const ExpressionTree& a, const ExpressionTree& b);

private:
    friend class ExpressionParser;

    enum class Code : std::uint8_t { push, load_outs, load_ins, unary, binary, compare, jump_if_false, jump };
    struct Instr {
        Code code;
        ExprOp op;
        double value;
        std::uint32_t target;
    };

    void compile();
    void emit(std::int32_t node);

    PrefMode mode_ = PrefMode::directed;
    std::string text_;
    std::vector<ExprNode> nodes_;
    std::int32_t root_ = -1;
    std::vector<Instr> program_;
    std::size_t max_depth_ = 0;
};

/// Parses the preference DSL: numbers, `outs`/`ins` (directed) or `s`
/// (undirected), `+ - * /`, unary minus, `pow(a, b)`, `log`, `exp`, `sqrt`,
/// `abs`, and `if(a OP b, then, else)` with OP one of `< <= > >= ==`.
/// Throws ParseError carrying the 1-based position of the problem.
ExpressionTree parse_preference(std::string_view text, PrefMode mode);

}  // namespace pagen
