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

#include "pagen/expression.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "pagen/errors.hpp"

namespace pagen {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

const char* op_symbol(ExprOp op) {
    switch (op) {
        case ExprOp::add: return "+";
        case ExprOp::sub: return "-";
        case ExprOp::mul: return "*";
        case ExprOp::div: return "/";
        case ExprOp::lt: return "<";
        case ExprOp::le: return "<=";
        case ExprOp::gt: return ">";
        case ExprOp::ge: return ">=";
        case ExprOp::eq: return "==";
        case ExprOp::pow: return "pow";
        case ExprOp::log: return "log";
        case ExprOp::exp: return "exp";
        case ExprOp::sqrt: return "sqrt";
        case ExprOp::abs: return "abs";
        default: return "?";
    }
}

[[noreturn]] void domain_fail(const std::string& what, double outs, double ins) {
    std::ostringstream os;
    os << what << " (outs=" << outs << ", ins=" << ins << ")";
    throw DomainError(os.str());
}

}  // namespace

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, PrefMode mode) : text_(text), mode_(mode) {}

    ExpressionTree parse() {
        tree_.mode_ = mode_;
        tree_.text_ = std::string(text_);
        skip_ws();
        if (pos_ >= text_.size()) fail("empty expression");
        tree_.root_ = expr();
        skip_ws();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        tree_.compile();
        return std::move(tree_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const { throw ParseError(msg, at + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    std::int32_t add(ExprNode n) {
        tree_.nodes_.push_back(n);
        return static_cast<std::int32_t>(tree_.nodes_.size() - 1);
    }

    std::int32_t binary(ExprOp op, std::int32_t a, std::int32_t b) { return add({op, 0.0, {a, b, -1}}); }

    std::int32_t expr() {
        std::int32_t lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(ExprOp::add, lhs, term());
            } else if (accept('-')) {
                lhs = binary(ExprOp::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t term() {
        std::int32_t lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(ExprOp::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = binary(ExprOp::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    std::int32_t unary() {
        if (accept('-')) return add({ExprOp::neg, 0.0, {unary(), -1, -1}});
        if (accept('+')) return unary();
        return primary();
    }

    std::int32_t primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            std::int32_t inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    std::int32_t number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) fail_at("malformed number", start);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail("malformed exponent");
        }
        double v = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) fail_at("malformed number", start);
        return add({ExprOp::literal, v, {-1, -1, -1}});
    }

    std::int32_t identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "outs" || name == "ins") {
            if (mode_ != PrefMode::directed) {
                fail_at("variable '" + std::string(name) + "' is only available for directed networks (use 's')", start);
            }
            return add({name == "outs" ? ExprOp::var_outs : ExprOp::var_ins, 0.0, {-1, -1, -1}});
        }
        if (name == "s") {
            if (mode_ != PrefMode::undirected) {
                fail_at("variable 's' is only available for undirected networks (use 'outs' or 'ins')", start);
            }
            return add({ExprOp::var_s, 0.0, {-1, -1, -1}});
        }

        ExprOp op;
        int arity = 1;
        if (name == "pow") {
            op = ExprOp::pow;
            arity = 2;
        } else if (name == "log") {
            op = ExprOp::log;
        } else if (name == "exp") {
            op = ExprOp::exp;
        } else if (name == "sqrt") {
            op = ExprOp::sqrt;
        } else if (name == "abs") {
            op = ExprOp::abs;
        } else if (name == "if") {
            return conditional();
        } else {
            fail_at("unknown identifier '" + std::string(name) + "'", start);
        }

        skip_ws();
        if (!accept('(')) fail("expected '(' after '" + std::string(name) + "'");
        ExprNode n{op, 0.0, {-1, -1, -1}};
        for (int i = 0; i < arity; ++i) {
            if (i > 0) expect(',');
            n.child[static_cast<std::size_t>(i)] = expr();
        }
        expect(')');
        return add(n);
    }

    std::int32_t conditional() {
        if (!accept('(')) fail_at("expected '(' after 'if'", pos_);
        std::int32_t lhs = expr();
        skip_ws();
        ExprOp rel;
        if (text_.substr(pos_, 2) == "<=") {
            rel = ExprOp::le, pos_ += 2;
        } else if (text_.substr(pos_, 2) == ">=") {
            rel = ExprOp::ge, pos_ += 2;
        } else if (text_.substr(pos_, 2) == "==") {
            rel = ExprOp::eq, pos_ += 2;
        } else if (text_.substr(pos_, 1) == "<") {
            rel = ExprOp::lt, pos_ += 1;
        } else if (text_.substr(pos_, 1) == ">") {
            rel = ExprOp::gt, pos_ += 1;
        } else {
            fail("expected comparison operator in if() condition");
        }
        std::int32_t test = binary(rel, lhs, expr());
        expect(',');
        std::int32_t then_branch = expr();
        expect(',');
        std::int32_t else_branch = expr();
        expect(')');
        return add({ExprOp::cond, 0.0, {test, then_branch, else_branch}});
    }

    std::string_view text_;
    PrefMode mode_;
    std::size_t pos_ = 0;
    ExpressionTree tree_;
};

ExpressionTree parse_preference(std::string_view text, PrefMode mode) {
    return ExpressionParser(text, mode).parse();
}

void ExpressionTree::compile() {
    program_.clear();
    emit(root_);
    // Stack depth bound: every push is at most one deeper than the tree height.
    std::function<std::size_t(std::int32_t)> height = [&](std::int32_t i) -> std::size_t {
        std::size_t h = 0;
        for (auto c : nodes_[static_cast<std::size_t>(i)].child) {
            if (c >= 0) h = std::max(h, height(c));
        }
        return h + 1;
    };
    max_depth_ = height(root_) + 1;
}

void ExpressionTree::emit(std::int32_t idx) {
    const ExprNode& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case ExprOp::literal:
            program_.push_back({Code::push, n.op, n.value, 0});
            return;
        case ExprOp::var_outs:
        case ExprOp::var_s:
            program_.push_back({Code::load_outs, n.op, 0.0, 0});
            return;
        case ExprOp::var_ins:
            program_.push_back({Code::load_ins, n.op, 0.0, 0});
            return;
        case ExprOp::neg:
        case ExprOp::log:
        case ExprOp::exp:
        case ExprOp::sqrt:
        case ExprOp::abs:
            emit(n.child[0]);
            program_.push_back({Code::unary, n.op, 0.0, 0});
            return;
        case ExprOp::add:
        case ExprOp::sub:
        case ExprOp::mul:
        case ExprOp::div:
        case ExprOp::pow:
            emit(n.child[0]);
            emit(n.child[1]);
            program_.push_back({Code::binary, n.op, 0.0, 0});
            return;
        case ExprOp::lt:
        case ExprOp::le:
        case ExprOp::gt:
        case ExprOp::ge:
        case ExprOp::eq:
            emit(n.child[0]);
            emit(n.child[1]);
            program_.push_back({Code::compare, n.op, 0.0, 0});
            return;
        case ExprOp::cond: {
            emit(n.child[0]);
            const std::size_t jf = program_.size();
            program_.push_back({Code::jump_if_false, n.op, 0.0, 0});
            emit(n.child[1]);
            const std::size_t jmp = program_.size();
            program_.push_back({Code::jump, n.op, 0.0, 0});
            program_[jf].target = static_cast<std::uint32_t>(program_.size());
            emit(n.child[2]);
            program_[jmp].target = static_cast<std::uint32_t>(program_.size());
            return;
        }
    }
}

double ExpressionTree::evaluate(double outs, double ins) const {
    constexpr std::size_t kInline = 32;
    std::array<double, kInline> small;
    std::vector<double> big;
    double* stack = small.data();
    if (max_depth_ > kInline) {
        big.resize(max_depth_);
        stack = big.data();
    }
    std::size_t sp = 0;

    const std::size_t n = program_.size();
    for (std::size_t pc = 0; pc < n;) {
        const Instr& in = program_[pc];
        switch (in.code) {
            case Code::push: stack[sp++] = in.value; break;
            case Code::load_outs: stack[sp++] = outs; break;
            case Code::load_ins: stack[sp++] = ins; break;
            case Code::unary: {
                double& x = stack[sp - 1];
                switch (in.op) {
                    case ExprOp::neg: x = -x; break;
                    case ExprOp::log:
                        if (!(x > 0.0)) domain_fail("log of nonpositive value " + format_double(x), outs, ins);
                        x = std::log(x);
                        break;
                    case ExprOp::exp: x = std::exp(x); break;
                    case ExprOp::sqrt:
                        if (x < 0.0) domain_fail("sqrt of negative value " + format_double(x), outs, ins);
                        x = std::sqrt(x);
                        break;
                    case ExprOp::abs: x = std::fabs(x); break;
                    default: break;
                }
                break;
            }
            case Code::binary: {
                const double b = stack[--sp];
                double& a = stack[sp - 1];
                switch (in.op) {
                    case ExprOp::add: a += b; break;
                    case ExprOp::sub: a -= b; break;
                    case ExprOp::mul: a *= b; break;
                    case ExprOp::div:
                        if (b == 0.0) domain_fail("division by zero", outs, ins);
                        a /= b;
                        break;
                    case ExprOp::pow: a = std::pow(a, b); break;
                    default: break;
                }
                break;
            }
            case Code::compare: {
                const double b = stack[--sp];
                double& a = stack[sp - 1];
                bool r = false;
                switch (in.op) {
                    case ExprOp::lt: r = a < b; break;
                    case ExprOp::le: r = a <= b; break;
                    case ExprOp::gt: r = a > b; break;
                    case ExprOp::ge: r = a >= b; break;
                    case ExprOp::eq: r = a == b; break;
                    default: break;
                }
                a = r ? 1.0 : 0.0;
                break;
            }
            case Code::jump_if_false:
                if (stack[--sp] == 0.0) {
                    pc = in.target;
                    continue;
                }
                break;
            case Code::jump:
                pc = in.target;
                continue;
        }
        ++pc;
    }
    const double result = stack[0];
    if (!std::isfinite(result)) domain_fail("non-finite preference value " + format_double(result), outs, ins);
    return result;
}

namespace {

void print(const std::vector<ExprNode>& nodes, std::int32_t idx, std::string& out) {
    const ExprNode& n = nodes[static_cast<std::size_t>(idx)];
    switch (n.op) {
        case ExprOp::literal: out += format_double(n.value); return;
        case ExprOp::var_outs: out += "outs"; return;
        case ExprOp::var_ins: out += "ins"; return;
        case ExprOp::var_s: out += "s"; return;
        case ExprOp::neg:
            out += "(-";
            print(nodes, n.child[0], out);
            out += ')';
            return;
        case ExprOp::add:
        case ExprOp::sub:
        case ExprOp::mul:
        case ExprOp::div:
            out += '(';
            print(nodes, n.child[0], out);
            out += ' ';
            out += op_symbol(n.op);
            out += ' ';
            print(nodes, n.child[1], out);
            out += ')';
            return;
        case ExprOp::lt:
        case ExprOp::le:
        case ExprOp::gt:
        case ExprOp::ge:
        case ExprOp::eq:
            print(nodes, n.child[0], out);
            out += ' ';
            out += op_symbol(n.op);
            out += ' ';
            print(nodes, n.child[1], out);
            return;
        case ExprOp::pow:
            out += "pow(";
            print(nodes, n.child[0], out);
            out += ", ";
            print(nodes, n.child[1], out);
            out += ')';
            return;
        case ExprOp::log:
        case ExprOp::exp:
        case ExprOp::sqrt:
        case ExprOp::abs:
            out += op_symbol(n.op);
            out += '(';
            print(nodes, n.child[0], out);
            out += ')';
            return;
        case ExprOp::cond:
            out += "if(";
            print(nodes, n.child[0], out);
            out += ", ";
            print(nodes, n.child[1], out);
            out += ", ";
            print(nodes, n.child[2], out);
            out += ')';
            return;
    }
}

bool same(const ExpressionTree& a, std::int32_t i, const ExpressionTree& b, std::int32_t j) {
    if ((i < 0) != (j < 0)) return false;
    if (i < 0) return true;
    const ExprNode& x = a.nodes()[static_cast<std::size_t>(i)];
    const ExprNode& y = b.nodes()[static_cast<std::size_t>(j)];
    if (x.op != y.op) return false;
    if (x.op == ExprOp::literal && x.value != y.value) return false;
    for (std::size_t k = 0; k < 3; ++k) {
        if (!same(a, x.child[k], b, y.child[k])) return false;
    }
    return true;
}

}  // namespace

std::string ExpressionTree::to_string() const {
    std::string out;
    if (root_ >= 0) print(nodes_, root_, out);
    return out;
}

bool operator==(const ExpressionTree& a, const ExpressionTree& b) {
    return a.mode_ == b.mode_ && same(a, a.root_, b, b.root_);
}

}  // namespace pagen
