#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

// A small expression language over the variables x and y:
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := primary ['^' factor]
//   primary := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func    := sqrt | ln | arcsin | arctan | arctanh
//
// A leading minus negates the first term only, so "-a+b" is (-a)+b. A minus
// sign cannot follow an operator: "2^-1" must be written "2^(-1)".

namespace appellf2 {

enum class NodeKind { Constant, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Sqrt, Ln, Arcsin, Arctan, Arctanh };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;  // Constant
    Func func = Func::Sqrt;  // Call
    Expr lhs;  // unary operand, call argument, or left operand
    Expr rhs;
    // Pow only: the exponent is variable-free and not an integer, so the base
    // must be positive wherever the node is evaluated.
    bool requires_positive_base = false;
};

inline const char* func_name(Func f) {
    switch (f) {
        case Func::Sqrt: return "sqrt";
        case Func::Ln: return "ln";
        case Func::Arcsin: return "arcsin";
        case Func::Arctan: return "arctan";
        case Func::Arctanh: return "arctanh";
    }
    return "?";
}

inline std::optional<Func> func_from_name(std::string_view s) {
    if (s == "sqrt") return Func::Sqrt;
    if (s == "ln") return Func::Ln;
    if (s == "arcsin") return Func::Arcsin;
    if (s == "arctan") return Func::Arctan;
    if (s == "arctanh") return Func::Arctanh;
    return std::nullopt;
}

// Builders.
inline Expr constant(double v) {
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
}

inline Expr var_x() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::VarX;
    return n;
}

inline Expr var_y() {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::VarY;
    return n;
}

inline Expr negate(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Neg;
    n->lhs = std::move(e);
    return n;
}

inline Expr call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

inline double eval_expr(const Expr& e, double x, double y);

namespace detail {

inline bool variable_free(const Expr& e) {
    if (!e) return true;
    if (e->kind == NodeKind::VarX || e->kind == NodeKind::VarY) return false;
    return variable_free(e->lhs) && variable_free(e->rhs);
}

}  // namespace detail

inline Expr binary(NodeKind kind, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    if (kind == NodeKind::Pow && detail::variable_free(rhs)) {
        try {
            const double p = eval_expr(rhs, 0.0, 0.0);
            n->requires_positive_base = p != std::round(p);
        } catch (const EvalError&) {
            n->requires_positive_base = true;
        }
    }
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Constant: return a->value == b->value;
        case NodeKind::VarX:
        case NodeKind::VarY: return true;
        case NodeKind::Call:
            return a->func == b->func && structurally_equal(a->lhs, b->lhs);
        default: return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

namespace detail {

inline int precedence(const Expr& e) {
    switch (e->kind) {
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Neg: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Pow: return 3;
        case NodeKind::Constant: return e->value < 0.0 || std::signbit(e->value) ? 1 : 4;
        default: return 4;
    }
}

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void render_into(const Expr& e, std::string& out);

inline void render_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    render_into(e, out);
    if (wrap) out += ')';
}

inline void render_into(const Expr& e, std::string& out) {
    switch (e->kind) {
        case NodeKind::Constant: out += format_number(e->value); return;
        case NodeKind::VarX: out += 'x'; return;
        case NodeKind::VarY: out += 'y'; return;
        case NodeKind::Neg:
            out += '-';
            render_wrapped(e->lhs, precedence(e->lhs) <= 1, out);
            return;
        case NodeKind::Call:
            out += func_name(e->func);
            render_wrapped(e->lhs, true, out);
            return;
        case NodeKind::Add:
        case NodeKind::Sub:
            render_into(e->lhs, out);
            out += e->kind == NodeKind::Add ? '+' : '-';
            render_wrapped(e->rhs, precedence(e->rhs) <= 1, out);
            return;
        case NodeKind::Mul:
        case NodeKind::Div:
            render_wrapped(e->lhs, precedence(e->lhs) < 2, out);
            out += e->kind == NodeKind::Mul ? '*' : '/';
            render_wrapped(e->rhs, precedence(e->rhs) <= 2, out);
            return;
        case NodeKind::Pow:
            render_wrapped(e->lhs, precedence(e->lhs) <= 3, out);
            out += '^';
            render_wrapped(e->rhs, precedence(e->rhs) < 3, out);
            return;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_space();
        if (pos_ < text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'",
                 {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    static constexpr int max_depth = 200;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(msg, pos_, std::move(expected));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        if (++depth_ > max_depth) fail("expression nested too deeply", {});
        Expr e = accept('-') ? negate(term()) : term();
        for (;;) {
            if (accept('+')) e = binary(NodeKind::Add, e, term());
            else if (accept('-')) e = binary(NodeKind::Sub, e, term());
            else break;
        }
        --depth_;
        return e;
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (accept('*')) e = binary(NodeKind::Mul, e, factor());
            else if (accept('/')) e = binary(NodeKind::Div, e, factor());
            else break;
        }
        return e;
    }

    Expr factor() {
        if (++depth_ > max_depth) fail("expression nested too deeply", {});
        Expr base = primary();
        if (accept('^')) base = binary(NodeKind::Pow, base, factor());
        --depth_;
        return base;
    }

    Expr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input", primary_expected());
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')')) fail("missing ')'", {")"});
            return e;
        }
        fail("unexpected character '" + std::string(1, c) + "'", primary_expected());
    }

    static std::vector<std::string> primary_expected() {
        return {"number", "x", "y", "(", "sqrt", "ln", "arcsin", "arctan", "arctanh"};
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t count = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) {
            pos_ = start;
            fail("malformed number", {"digit"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail("malformed exponent", {"digit"});
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number", {"number"});
        }
        return constant(v);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return var_x();
        if (name == "y") return var_y();
        const auto f = func_from_name(name);
        if (!f) {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'", primary_expected());
        }
        if (!accept('(')) fail("expected '(' after " + std::string(name), {"("});
        Expr arg = expr();
        if (!accept(')')) fail("missing ')'", {")"});
        return call(*f, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string render(const Expr& e) {
    std::string out;
    detail::render_into(e, out);
    return out;
}

namespace detail {

[[noreturn]] inline void eval_fail(const Node& n, const std::string& reason) {
    // Re-wrap in a non-owning pointer to render the offending node.
    const Expr view(std::shared_ptr<const Node>{}, &n);
    throw EvalError(render(view), reason);
}

inline double eval_node(const Node& n, double x, double y) {
    switch (n.kind) {
        case NodeKind::Constant: return n.value;
        case NodeKind::VarX: return x;
        case NodeKind::VarY: return y;
        case NodeKind::Neg: return -eval_node(*n.lhs, x, y);
        case NodeKind::Add: return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
        case NodeKind::Sub: return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
        case NodeKind::Mul: return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
        case NodeKind::Div: {
            const double num = eval_node(*n.lhs, x, y);
            const double den = eval_node(*n.rhs, x, y);
            if (den == 0.0) eval_fail(n, "division by zero");
            return num / den;
        }
        case NodeKind::Pow: {
            const double b = eval_node(*n.lhs, x, y);
            const double p = eval_node(*n.rhs, x, y);
            if (b <= 0.0 && p != std::round(p))
                eval_fail(n, "non-positive base with non-integer exponent");
            if (b == 0.0 && p < 0.0) eval_fail(n, "division by zero");
            return std::pow(b, p);
        }
        case NodeKind::Call: {
            const double t = eval_node(*n.lhs, x, y);
            switch (n.func) {
                case Func::Sqrt:
                    if (!(t > 0.0)) eval_fail(n, "sqrt of non-positive argument");
                    return std::sqrt(t);
                case Func::Ln:
                    if (!(t > 0.0)) eval_fail(n, "ln of non-positive argument");
                    return std::log(t);
                case Func::Arcsin:
                    if (!(t >= -1.0 && t <= 1.0)) eval_fail(n, "arcsin argument outside [-1, 1]");
                    return std::asin(t);
                case Func::Arctan: return std::atan(t);
                case Func::Arctanh:
                    if (!(t > -1.0 && t < 1.0)) eval_fail(n, "arctanh argument outside (-1, 1)");
                    return std::atanh(t);
            }
        }
    }
    eval_fail(n, "unknown node");
}

}  // namespace detail

// Throws EvalError for domain violations and for non-finite results.
inline double eval_expr(const Expr& e, double x, double y) {
    const double v = detail::eval_node(*e, x, y);
    if (!std::isfinite(v)) throw EvalError(render(e), "non-finite result");
    return v;
}

}  // namespace appellf2
