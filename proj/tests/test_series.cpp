#include <doctest.h>

#include <algorithm>

#include "ncdomain/errors.hpp"
#include "ncdomain/free_series.hpp"
#include "support.hpp"

using namespace ncdomain;
using namespace ncdomain::testing;

TEST_SUITE("series") {

TEST_CASE("word enumeration") {
    const auto words = words_up_to(2, 2);
    const std::vector<Word> expected{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(words == expected);
    CHECK(words_up_to(4, 3).size() == 1 + 4 + 16 + 64);
    CHECK(format_word({}) == "1");
    CHECK(format_word({1, 0}) == "x2*x1");
}

TEST_CASE("geometric series") {
    const FreeSeries s = expand_series(parse("(1 - x1)^-1"), 2, 5);
    for (const auto& w : words_up_to(2, 5)) {
        const bool only_x1 = std::all_of(w.begin(), w.end(), [](std::size_t j) { return j == 0; });
        CHECK(s.coefficient(w) == (only_x1 ? 1 : 0));
    }
}

TEST_CASE("conjugated variable expands by hand") {
    // (1 - x1) x2 sum_k x1^k = sum_k x2 x1^k - sum_k x1 x2 x1^k.
    const FreeSeries s = expand_series(parse("(1 - x1)*x2*(1 - x1)^-1"), 2, 4);
    CHECK(s.coefficient({}) == 0);
    CHECK(s.coefficient({1}) == 1);
    CHECK(s.coefficient({1, 0}) == 1);
    CHECK(s.coefficient({0, 1}) == -1);
    CHECK(s.coefficient({1, 0, 0}) == 1);
    CHECK(s.coefficient({0, 1, 0}) == -1);
    CHECK(s.coefficient({0, 0, 1}) == 0);
    CHECK(s.coefficient({1, 1}) == 0);
    CHECK(s.coefficient({0, 1, 0, 0}) == -1);
}

TEST_CASE("expansion of inverses with nonunit constant term") {
    // (2 + x1)^-1 = 1/2 - x1/4 + x1^2/8 - ...
    const FreeSeries s = expand_series(parse("(2 + x1)^-1"), 1, 3);
    CHECK(s.coefficient({}) == rat(1, 2));
    CHECK(s.coefficient({0}) == rat(-1, 4));
    CHECK(s.coefficient({0, 0}) == rat(1, 8));
    CHECK(s.coefficient({0, 0, 0}) == rat(-1, 16));
    CHECK_THROWS_AS(expand_series(parse("x1^-1"), 1, 3), NotRegularAtZero);
    CHECK_THROWS_AS(expand_series(parse("(x1*x2 - x2*x1)^-1"), 2, 3), NotRegularAtZero);
}

TEST_CASE("inverse times its argument is one") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Expr e = random_expr(rng, 2, 3);
        const Expr a = e * e + Expr::constant(1);  // sample arguments with a nonzero constant term
        try {
            const FreeSeries s = expand_series(a, 2, 4);
            if (sgn(s.coefficient({})) == 0) continue;
            const FreeSeries inv = expand_series(Expr::inv(a), 2, 4);
            CHECK(s * inv == FreeSeries::constant(2, 4, Rat(1)));
            CHECK(inv * s == FreeSeries::constant(2, 4, Rat(1)));
        } catch (const NotRegularAtZero&) {
        }
    }
}

TEST_CASE("nc polynomials") {
    const FreeSeries p = nc_polynomial(parse("(x1 + x2)*(x1 - x2)"), 2);
    CHECK(p.degree() == 2);
    CHECK(p.coefficient({0, 0}) == 1);
    CHECK(p.coefficient({0, 1}) == -1);
    CHECK(p.coefficient({1, 0}) == 1);
    CHECK(p.coefficient({1, 1}) == -1);
    CHECK(p.terms().size() == 4);
    CHECK_THROWS_AS(nc_polynomial(parse("x1^-1"), 1), Error);

    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        Expr e = random_expr(rng, 3, 3);
        if (has_inverse(e)) continue;
        const MatTuple x = random_tuple(rng, 3, 3);
        CHECK(evaluate(nc_polynomial(e, 3), x) == *eval(e, x).value);
    }
}

TEST_CASE("letter substitution") {
    const FreeSeries p = nc_polynomial(parse("x1*x2 + 3*x3"), 4);
    const FreeSeries q = substitute_letters(p, {1, 0, 3, 2});
    CHECK(q == nc_polynomial(parse("x2*x1 + 3*x4"), 4));
}

}
