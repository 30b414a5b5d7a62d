#include <doctest.h>

#include "ncdomain/errors.hpp"
#include "ncdomain/expr.hpp"
#include "support.hpp"

using namespace ncdomain;
using namespace ncdomain::testing;

TEST_SUITE("expr") {

TEST_CASE("parse builds the expected tree") {
    const Expr e = parse("x1 - x2");
    REQUIRE(e.kind() == Expr::Kind::Add);
    CHECK(e.lhs().kind() == Expr::Kind::Var);
    CHECK(e.lhs().index() == 0);
    REQUIRE(e.rhs().kind() == Expr::Kind::Neg);
    CHECK(e.rhs().arg().index() == 1);

    CHECK(structurally_equal(parse("inv(x1)"), parse("x1^-1")));
    CHECK(structurally_equal(parse("x1*x2*x3"), (Expr::variable(0) * Expr::variable(1)) * Expr::variable(2)));
    CHECK(parse("2/4").value() == rat(1, 2));
    CHECK(parse("-3").kind() == Expr::Kind::Neg);
    CHECK(variable_count(parse("x1 + x7")) == 7);
    CHECK(variable_count(parse("3")) == 0);
    CHECK(parse("x1^-1^-1").arg().kind() == Expr::Kind::Inv);
}

TEST_CASE("format is canonical") {
    CHECK(format(parse("(1 - x1)*x2*(1 - x1)^-1")) == "(1 - x1)*x2*(1 - x1)^-1");
    CHECK(format(parse("inv(x4 - x3*inv(x1)*x2)")) == "(x4 - x3*x1^-1*x2)^-1");
    CHECK(format(parse("x1 + -x2")) == "x1 - x2");
    CHECK(format(parse("-(x1 + x2)")) == "-(x1 + x2)");
    CHECK(format(parse("(x1*x2)^-1")) == "(x1*x2)^-1");
    CHECK(format(parse("(-x1)*x2")) == "(-x1)*x2");
    CHECK(format(Expr::constant(rat(-3, 4))) == "-3/4");
}

TEST_CASE("parse and format round trip on random expressions") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const Expr e = random_expr(rng, 3, 5);
        const std::string text = format(e);
        CHECK_MESSAGE(structurally_equal(parse(text), e), text);
        CHECK(format(parse(text)) == text);
    }
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse("x1 +"), ParseError);
    CHECK_THROWS_AS(parse("(x1"), ParseError);
    CHECK_THROWS_AS(parse("x1 x2"), ParseError);
    CHECK_THROWS_AS(parse("x0"), ParseError);
    CHECK_THROWS_AS(parse("x1^2"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("x1 + * x2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse("x3", 2), VariableOutOfRange);
    CHECK_NOTHROW(parse("x2", 2));
}

TEST_CASE("sizes of shared expressions") {
    const Expr x = Expr::variable(0);
    const Expr s = x + x;
    const Expr t = s * s;
    CHECK(tree_size(t) == 7);
    CHECK(dag_size(t) == 3);
    CHECK(tree_size(t, 4) == 4);
    CHECK_FALSE(has_inverse(t));
    CHECK(has_inverse(parse("x1 + x2^-1")));
    CHECK(format_bounded(t, 5) == std::nullopt);
    CHECK(format_bounded(t, 100) == format(t));
}

TEST_CASE("evaluation by hand") {
    // (1 - X1) X2 (1 - X1)^-1 with X1 = [[0,1],[0,0]], X2 = diag(1,2):
    // (1 - X1) = [[1,-1],[0,1]], its inverse [[1,1],[0,1]], product [[1,-1],[0,2]].
    const MatTuple x{2, {QMatrix{{0, 1}, {0, 0}}, QMatrix{{1, 0}, {0, 2}}}};
    const EvalResult r = eval(parse("(1 - x1)*x2*(1 - x1)^-1"), x);
    REQUIRE(r.defined());
    CHECK(*r.value == QMatrix{{1, -1}, {0, 2}});
    CHECK(*eval(parse("3/2"), x).value == QMatrix{{rat(3, 2), 0}, {0, rat(3, 2)}});
}

TEST_CASE("undefined evaluation names the failing inverse") {
    const MatTuple x{2, {QMatrix{{1, 0}, {0, 0}}}};
    const EvalResult r = eval(parse("x1 + (x1^-1 + 1)^-1"), x);
    CHECK_FALSE(r.defined());
    REQUIRE(r.undefined_at.has_value());
    CHECK(format(*r.undefined_at) == "x1^-1");

    const std::vector<Rat> zero{0};
    CHECK_FALSE(eval_scalar(parse("(x1 - x1)^-1"), zero).defined());
    CHECK_THROWS_AS(eval(parse("x2"), x), DimensionMismatch);
}

TEST_CASE("evaluator shares work across calls") {
    Rng rng(22);
    const MatTuple x = random_tuple(rng, 3, 2);
    Evaluator ev(x);
    for (int trial = 0; trial < 50; ++trial) {
        const Expr e = random_expr(rng, 3, 4);
        const EvalResult a = ev(e);
        const EvalResult b = eval(e, x);
        CHECK(a.defined() == b.defined());
        if (a.defined() && b.defined()) CHECK(*a.value == *b.value);
    }
}

TEST_CASE("shifting variables") {
    const Expr e = parse("x1*x2^-1");
    const std::vector<Rat> zero{0, 0};
    CHECK(structurally_equal(shift_vars(e, zero), e));
    const std::vector<Rat> alpha{1, 0};
    CHECK(format(shift_vars(e, alpha)) == "(x1 + 1)*x2^-1");

    Rng rng(23);
    const std::vector<Rat> beta{2, -1, rat(1, 2)};
    for (int trial = 0; trial < 30; ++trial) {
        const Expr f = random_expr(rng, 3, 3);
        const MatTuple x = random_tuple(rng, 3, 2);
        const EvalResult shifted = eval(shift_vars(f, beta), x);
        const EvalResult direct = eval(f, translate(x, std::vector<Rat>{-2, 1, rat(-1, 2)}));
        CHECK(shifted.defined() == direct.defined());
        if (shifted.defined() && direct.defined()) CHECK(*shifted.value == *direct.value);
    }
}

}
