#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include <appellf2/expr.hpp>

#include "oracle.hpp"

using namespace appellf2;

namespace {

Expr c(double v) { return constant(v); }
Expr add(Expr a, Expr b) { return binary(NodeKind::Add, a, b); }
Expr sub(Expr a, Expr b) { return binary(NodeKind::Sub, a, b); }
Expr mul(Expr a, Expr b) { return binary(NodeKind::Mul, a, b); }
Expr dvd(Expr a, Expr b) { return binary(NodeKind::Div, a, b); }
Expr pw(Expr a, Expr b) { return binary(NodeKind::Pow, a, b); }

}  // namespace

TEST(Parse, Constant) {
    const Expr e = parse_expr("1");
    EXPECT_EQ(e->kind, NodeKind::Constant);
    EXPECT_EQ(e->value, 1.0);
    EXPECT_EQ(parse_expr(" 2.5e-1 ")->value, 0.25);
    EXPECT_EQ(parse_expr(".5")->value, 0.5);
}

TEST(Parse, PowerDifferenceRow) {
    const Expr got = parse_expr("2/y * ((1-x)^(-1/2) - (1-x-y)^(-1/2))");
    const Expr half = negate(dvd(c(1), c(2)));
    const Expr want =
        mul(dvd(c(2), var_y()),
            sub(pw(sub(c(1), var_x()), half), pw(sub(sub(c(1), var_x()), var_y()), half)));
    EXPECT_TRUE(structurally_equal(got, want)) << render(got);
}

TEST(Parse, LogRow) {
    const Expr got = parse_expr("ln((1-x)*(1-y)/(1-x-y)) / (x*y)");
    const Expr want = dvd(call(Func::Ln, dvd(mul(sub(c(1), var_x()), sub(c(1), var_y())),
                                             sub(sub(c(1), var_x()), var_y()))),
                          mul(var_x(), var_y()));
    EXPECT_TRUE(structurally_equal(got, want));
}

TEST(Parse, Precedence) {
    EXPECT_TRUE(structurally_equal(parse_expr("1-x-y"), sub(sub(c(1), var_x()), var_y())));
    EXPECT_TRUE(structurally_equal(parse_expr("2^3^2"), pw(c(2), pw(c(3), c(2)))));
    EXPECT_TRUE(structurally_equal(parse_expr("x/y/2"), dvd(dvd(var_x(), var_y()), c(2))));
    EXPECT_TRUE(structurally_equal(parse_expr("-x^2"), negate(pw(var_x(), c(2)))));
    EXPECT_TRUE(structurally_equal(parse_expr("-x+y"), add(negate(var_x()), var_y())));
    EXPECT_TRUE(structurally_equal(parse_expr("-x*y+1"), add(negate(mul(var_x(), var_y())), c(1))));
    EXPECT_DOUBLE_EQ(eval_expr(parse_expr("2^3^2"), 0, 0), 512.0);
}

TEST(Parse, RationalsStayDivisions) {
    const Expr e = parse_expr("3/8");
    ASSERT_EQ(e->kind, NodeKind::Div);
    EXPECT_EQ(e->lhs->value, 3.0);
    EXPECT_EQ(e->rhs->value, 8.0);
}

TEST(Parse, Rejections) {
    auto offset_of = [](const char* text) -> std::size_t {
        try {
            parse_expr(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return std::string::npos;
    };
    EXPECT_EQ(offset_of("2^-1/2"), 2u);
    EXPECT_EQ(offset_of("x*-y"), 2u);
    EXPECT_EQ(offset_of(""), 0u);
    EXPECT_EQ(offset_of("(x"), 2u);
    EXPECT_EQ(offset_of("x)"), 1u);
    EXPECT_EQ(offset_of("exp(x)"), 0u);
    EXPECT_EQ(offset_of("sqrt x"), 5u);
    EXPECT_EQ(offset_of("1e"), 2u);
    EXPECT_EQ(offset_of("z"), 0u);
    EXPECT_EQ(offset_of("x y"), 2u);
    EXPECT_NO_THROW(parse_expr("2^(-1/2)"));
}

TEST(Parse, ExpectedSetIsReported) {
    try {
        parse_expr("(x");
        FAIL();
    } catch (const ParseError& e) {
        ASSERT_EQ(e.expected().size(), 1u);
        EXPECT_EQ(e.expected()[0], ")");
    }
}

TEST(Parse, DeepNestingIsAnErrorNotACrash) {
    const std::string deep = std::string(100000, '(') + "x" + std::string(100000, ')');
    EXPECT_THROW(parse_expr(deep), ParseError);
    const std::string fine = std::string(50, '(') + "x" + std::string(50, ')');
    EXPECT_NO_THROW(parse_expr(fine));
}

TEST(Parse, TotalOnRandomInput) {
    static const char alphabet[] = "xy0123456789.e+-*/^() sqrtlnarcsinh";
    oracle::SplitMix rng(31);
    int parsed = 0;
    for (int i = 0; i < 20000; ++i) {
        std::string s;
        const int len = rng.integer(0, 24);
        for (int k = 0; k < len; ++k) s += alphabet[rng.integer(0, sizeof(alphabet) - 2)];
        try {
            const Expr e = parse_expr(s);
            ++parsed;
            EXPECT_TRUE(structurally_equal(parse_expr(render(e)), e)) << s;
        } catch (const ParseError& err) {
            EXPECT_LE(err.offset(), s.size()) << s;
        }
    }
    EXPECT_GT(parsed, 0);
}

TEST(Render, RoundTrip) {
    for (const char* text :
         {"1-x-y", "1-(x-y)", "2^3^2", "(2^3)^2", "-x^2", "(-x)^2", "x/(y/2)", "x/y/2",
          "2/y*((1-x)^(-1/2)-(1-x-y)^(-1/2))", "-(1-x)+y", "arctanh(sqrt(x/(1-y)))",
          "0.1+1e-3*x", "x-(-y)", "-(x+y)*2", "(x*y)^(3/2)"}) {
        const Expr e = parse_expr(text);
        const std::string r = render(e);
        EXPECT_TRUE(structurally_equal(parse_expr(r), e)) << text << " -> " << r;
    }
}

TEST(Render, ConstantsKeepAllDigits) {
    const Expr e = constant(0.1);
    EXPECT_EQ(parse_expr(render(e))->value, 0.1);
    const Expr third = constant(1.0 / 3.0);
    EXPECT_EQ(parse_expr(render(third))->value, 1.0 / 3.0);
}

TEST(Eval, Values) {
    EXPECT_EQ(eval_expr(parse_expr("1"), 0.3, 0.7), 1.0);
    const Expr ln_row = parse_expr("ln((1-x)*(1-y)/(1-x-y)) / (x*y)");
    EXPECT_NEAR(eval_expr(ln_row, 0.2, 0.3), std::log(1.12) / 0.06, 1e-14);
    EXPECT_NEAR(eval_expr(ln_row, 0.2, 0.3), 1.88881, 1e-5);
    EXPECT_NEAR(eval_expr(parse_expr("arctanh(0.5)"), 0, 0), 0.5 * std::log(3.0), 1e-15);
    EXPECT_NEAR(eval_expr(parse_expr("arctan(1)*4"), 0, 0), std::acos(-1.0), 1e-15);
    EXPECT_NEAR(eval_expr(parse_expr("arcsin(sqrt(x))"), 0.5, 0), std::acos(-1.0) / 4, 1e-15);
    EXPECT_EQ(eval_expr(parse_expr("(-2)^3"), 0, 0), -8.0);
}

TEST(Eval, Errors) {
    auto node_of = [](const char* text, double x, double y) -> std::string {
        try {
            eval_expr(parse_expr(text), x, y);
        } catch (const EvalError& e) {
            return e.node();
        }
        return "<none>";
    };
    EXPECT_EQ(node_of("1/(x-y)", 0.3, 0.3), "1/(x-y)");
    EXPECT_EQ(node_of("2+(x-1)^(1/2)", 0.3, 0.3), "(x-1)^(1/2)");
    EXPECT_EQ(node_of("ln(x-y)", 0.3, 0.3), "ln(x-y)");
    EXPECT_EQ(node_of("sqrt(-x)", 0.3, 0.3), "sqrt(-x)");
    EXPECT_EQ(node_of("sqrt(x)", 0.0, 0.3), "sqrt(x)");
    EXPECT_EQ(node_of("arcsin(x+1)", 0.3, 0.3), "arcsin(x+1)");
    EXPECT_EQ(node_of("arctanh(x+y+0.5)", 0.3, 0.3), "arctanh(x+y+0.5)");
    EXPECT_EQ(node_of("x^(-1)", 0.0, 0.3), "x^(-1)");
    EXPECT_EQ(node_of("1+x", 0.0, 0.3), "<none>");
}

TEST(Eval, Deterministic) {
    const Expr e = parse_expr("(1-x-y)^(-5/2)*arctan(sqrt(x/(1-x)))+ln(1-y)/y");
    oracle::SplitMix rng(32);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(0.01, 0.6), y = rng.uniform(0.01, 0.3);
        EXPECT_EQ(eval_expr(e, x, y), eval_expr(parse_expr(render(e)), x, y));
    }
}

TEST(Nodes, PowerRecordsPositiveBase) {
    EXPECT_TRUE(parse_expr("x^(1/2)")->requires_positive_base);
    EXPECT_TRUE(parse_expr("x^0.5")->requires_positive_base);
    EXPECT_FALSE(parse_expr("x^2")->requires_positive_base);
    EXPECT_FALSE(parse_expr("x^(-3)")->requires_positive_base);
}
