#include <doctest.h>

#include "ncdomain/errors.hpp"
#include "ncdomain/realization.hpp"
#include "support.hpp"

using namespace ncdomain;
using namespace ncdomain::testing;

namespace {

// The minimal realization of (1 - x1) x2 (1 - x1)^-1 about 0 displayed in the literature:
// pencil [[1, 0, -x2], [x1, 1, -x2], [0, 0, 1 - x1]].
Realization reference_triple() {
    Realization r;
    r.g = 2;
    r.c = QMatrix{{0}, {1}, {0}};
    r.b = QMatrix{{0}, {0}, {1}};
    r.A = {QMatrix{{0, 0, 0}, {-1, 0, 0}, {0, 0, 1}}, QMatrix{{0, 0, 1}, {0, 0, 1}, {0, 0, 0}}};
    r.base_point = {0, 0};
    return r;
}

// Random expressions with a nonzero constant term in every inverse.
std::vector<Expr> regular_sample(Rng& rng, std::size_t g, std::size_t count, std::size_t depth) {
    std::vector<Expr> out;
    const std::vector<Rat> zero(g, Rat(0));
    while (out.size() < count) {
        Expr e = random_expr(rng, g, depth);
        if (eval_scalar(e, zero).defined()) out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

TEST_SUITE("realization") {

TEST_CASE("reference triple realizes the expression") {
    const Realization p = reference_triple();
    validate(p);
    const FreeSeries oracle = expand_series(parse("(1 - x1)*x2*(1 - x1)^-1"), 2, 5);
    CHECK(series(p, 5) == oracle);
}

TEST_CASE("built realization is minimal and similar to the reference one") {
    const Realization r = build(parse("(1 - x1)*x2*(1 - x1)^-1"), std::vector<Rat>{0, 0}, 2);
    CHECK(r.size() == 3);
    const auto p = similar(r, reference_triple());
    REQUIRE(p.has_value());
    CHECK(transform(r, *p).A == reference_triple().A);
    CHECK(transform(r, *p).c == reference_triple().c);
    CHECK(transform(r, *p).b == reference_triple().b);
}

TEST_CASE("coefficients against the expansion oracle") {
    Rng rng(41);
    for (const auto& e : regular_sample(rng, 3, 60, 4)) {
        const Realization r = build(e, std::vector<Rat>(3, Rat(0)), 3);
        const FreeSeries oracle = expand_series(e, 3, 4);
        for (const auto& w : words_up_to(3, 4)) CHECK_MESSAGE(coefficient(r, w) == oracle.coefficient(w), format(e));
    }
}

TEST_CASE("minimal size equals the Hankel rank") {
    Rng rng(42);
    for (const auto& e : regular_sample(rng, 2, 40, 3)) {
        const Realization r = build(e, std::vector<Rat>(2, Rat(0)), 2);
        // Minimal size d is reached by Hankel blocks with words of length <= d - 1.
        const std::size_t len = std::max<std::size_t>(r.size(), 1);
        if (len > 4) continue;
        CHECK_MESSAGE(hankel_rank(expand_series(e, 2, 2 * len), len) == r.size(), format(e));
    }
}

TEST_CASE("arithmetic on realizations matches the oracle") {
    Rng rng(43);
    const auto sample = regular_sample(rng, 2, 40, 3);
    const std::vector<Rat> zero{0, 0};
    for (std::size_t i = 0; i + 1 < sample.size(); i += 2) {
        const Expr& a = sample[i];
        const Expr& b = sample[i + 1];
        const Realization ra = build_unminimized(a, zero, 2);
        const Realization rb = build_unminimized(b, zero, 2);
        CHECK(series(add(ra, rb), 4) == expand_series(a + b, 2, 4));
        CHECK(series(multiply(ra, rb), 4) == expand_series(a * b, 2, 4));
        CHECK(series(negate(ra), 4) == expand_series(-a, 2, 4));
        CHECK(series(scale(rat(-3, 2), ra), 4) == expand_series(Expr::constant(rat(-3, 2)) * a, 2, 4));
        if (sgn(coefficient(ra, {})) != 0) CHECK(series(invert(ra), 4) == expand_series(Expr::inv(a), 2, 4));
    }
    CHECK_THROWS_AS(invert(variable_realization(2, 0)), ZeroConstantTerm);
}

TEST_CASE("minimization is idempotent and canonical up to similarity") {
    Rng rng(44);
    const std::vector<Rat> zero{0, 0};
    for (const auto& e : regular_sample(rng, 2, 30, 3)) {
        const Realization unmin = build_unminimized(e, zero, 2);
        const Realization m = minimize(unmin);
        const Realization mm = minimize(m);
        CHECK(mm.size() == m.size());
        CHECK(similar(m, mm).has_value());
        // e + 0*e' is the same function built along a different route.
        const Realization other = build(e + Expr::constant(0) * e, zero, 2);
        CHECK(other.size() == m.size());
        CHECK(similar(m, other).has_value());
    }
}

TEST_CASE("constants, variables and zero") {
    CHECK(constant_realization(2, 0).size() == 0);
    CHECK(coefficient(constant_realization(2, 5), {}) == 5);
    CHECK(coefficient(variable_realization(2, 1), {1}) == 1);
    CHECK(coefficient(variable_realization(2, 1), {0}) == 0);
    CHECK(build(parse("x1 - x1"), std::vector<Rat>{0}, 1).size() == 0);
}

TEST_CASE("realization about a nonzero point") {
    // x1^-1 about 1: 1/(1 + t) = 1 - t + t^2 - ...
    const Realization r = build(parse("x1^-1"), std::vector<Rat>{1}, 1);
    CHECK(r.size() == 1);
    CHECK(coefficient(r, {}) == 1);
    CHECK(coefficient(r, {0}) == -1);
    CHECK(coefficient(r, {0, 0}) == 1);
    CHECK_THROWS_AS(build(parse("x1^-1"), std::vector<Rat>{0}, 1), NotRegularAtPoint);

    // Block inverse entry about (1,0,0,1) against a hand-written 2 x 2 pencil.
    Realization reference;
    reference.g = 4;
    reference.c = QMatrix{{0}, {1}};
    reference.b = QMatrix{{0}, {1}};
    reference.A = {QMatrix{{-1, 0}, {0, 0}}, QMatrix{{0, -1}, {0, 0}}, QMatrix{{0, 0}, {-1, 0}},
                   QMatrix{{0, 0}, {0, -1}}};
    reference.base_point = {1, 0, 0, 1};
    const Realization built = build(parse("inv(x4 - x3*inv(x1)*x2)"), reference.base_point, 4);
    CHECK(built.size() == 2);
    CHECK(similar(built, reference).has_value());
}

TEST_CASE("evaluation at matrices agrees with the expression") {
    Rng rng(45);
    for (const auto& e : regular_sample(rng, 2, 40, 3)) {
        const Realization r = build(e, std::vector<Rat>{0, 0}, 2);
        for (int k = 0; k < 5; ++k) {
            const MatTuple x = random_tuple(rng, 2, 2, 1);
            const EvalResult v = eval(e, x);
            if (!v.defined()) continue;
            const auto value = evaluate(r, x);
            REQUIRE_MESSAGE(value.has_value(), format(e));
            CHECK(*value == *v.value);
        }
    }
}

TEST_CASE("shifts") {
    const Realization r = build(parse("(1 - x1)*x2*(1 - x1)^-1"), std::vector<Rat>{0, 0}, 2);
    const Realization l2 = left_shift(r, 1);
    CHECK(l2.size() == 1);
    CHECK(similar(l2, build(parse("(1 - x1)^-1"), std::vector<Rat>{0, 0}, 2)).has_value());

    Rng rng(46);
    for (const auto& e : regular_sample(rng, 2, 20, 3)) {
        const Realization base = build(e, std::vector<Rat>{0, 0}, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            const Realization left = left_shift(base, j);
            const Realization right = right_shift(base, j);
            for (const auto& w : words_up_to(2, 3)) {
                Word lw{j};
                lw.insert(lw.end(), w.begin(), w.end());
                Word rw = w;
                rw.push_back(j);
                CHECK(coefficient(left, w) == coefficient(base, lw));
                CHECK(coefficient(right, w) == coefficient(base, rw));
            }
        }
    }
}

TEST_CASE("similarity finds the transform and rejects different functions") {
    Rng rng(47);
    const Realization r = build(parse("(1 - x1)*x2*(1 - x1)^-1"), std::vector<Rat>{0, 0}, 2);
    const QMatrix p = random_invertible(rng, 3);
    const Realization t = transform(r, p);
    const auto found = similar(r, t);
    REQUIRE(found.has_value());
    CHECK(*found == p);
    CHECK_FALSE(similar(r, build(parse("x2*(1 - x1)^-1"), std::vector<Rat>{0, 0}, 2)).has_value());
}

TEST_CASE("scalar point search") {
    const auto p = search_scalar_point([](std::span<const Rat>) { return true; }, 3);
    CHECK(*p == std::vector<Rat>{0, 0, 0});
    const auto q = search_scalar_point(
        [](std::span<const Rat> a) { return eval_scalar(parse("inv(x4 - x3*inv(x1)*x2)"), a).defined(); }, 4);
    CHECK(*q == std::vector<Rat>{1, 0, 0, 1});
    CHECK_FALSE(search_scalar_point([](std::span<const Rat>) { return false; }, 2).has_value());
    const auto r1 = search_scalar_point([](std::span<const Rat> a) { return a[0] == 5; }, 1, SamplingOptions{7});
    const auto r2 = search_scalar_point([](std::span<const Rat> a) { return a[0] == 5; }, 1, SamplingOptions{7});
    CHECK(r1 == r2);
}

TEST_CASE("equality verdicts") {
    auto verdict = [](const char* a, const char* b) {
        const Expr e1 = parse(a), e2 = parse(b);
        return equal(e1, e2, std::max(variable_count(e1), variable_count(e2)));
    };
    CHECK(verdict("x1^-1*x2^-1", "(x2*x1)^-1").kind == EqualityVerdict::Kind::Equal);
    CHECK(verdict("(1 - x1)*x2*(1 - x1)^-1", "x2").kind == EqualityVerdict::Kind::Unequal);
    CHECK(verdict("x1*(x2*x1)^-1", "x2^-1").kind == EqualityVerdict::Kind::Equal);
    CHECK(verdict("(x1*x2 - x2*x1)^-1", "0").kind == EqualityVerdict::Kind::Unknown);
    const EqualityVerdict v = verdict("x1*x2", "x2*x1");
    REQUIRE(v.kind == EqualityVerdict::Kind::Unequal);
    REQUIRE(v.word.has_value());
    CHECK(v.word->size() == 2);
    CHECK(v.difference != 0);
}

}
