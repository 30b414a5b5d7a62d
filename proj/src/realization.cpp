#include "ncdomain/realization.hpp"

#include <random>
#include <string>
#include <unordered_map>

#include "ncdomain/errors.hpp"

namespace ncdomain {

Realization Realization::zero(std::size_t g, std::vector<Rat> base_point) {
    if (base_point.empty()) base_point.assign(g, Rat(0));
    return Realization{g, QMatrix(0, 1), std::vector<QMatrix>(g, QMatrix(0, 0)), QMatrix(0, 1), std::move(base_point)};
}

void validate(const Realization& r) {
    const std::size_t d = r.size();
    if (r.c.cols() != 1 || r.b.rows() != d || r.b.cols() != 1)
        throw DimensionMismatch("realization vectors must be d x 1");
    if (r.A.size() != r.g || r.base_point.size() != r.g)
        throw DimensionMismatch("realization needs g coefficient matrices and a base point of length g");
    for (const auto& a : r.A)
        if (a.rows() != d || a.cols() != d) throw DimensionMismatch("realization coefficient matrix is not d x d");
}

namespace {

void require_compatible(const Realization& r1, const Realization& r2) {
    if (r1.g != r2.g) throw DimensionMismatch("realizations over different variable counts");
    if (r1.base_point != r2.base_point) throw BasePointMismatch();
}

QMatrix stack(const QMatrix& top, const QMatrix& bottom) {
    QMatrix s(top.rows() + bottom.rows(), top.cols());
    s.set_block(0, 0, top);
    s.set_block(top.rows(), 0, bottom);
    return s;
}

Rat dot(const QMatrix& u, const QMatrix& v) { return (u.transpose() * v)(0, 0); }

Realization transpose_realization(const Realization& r) {
    Realization t = r;
    t.c = r.b;
    t.b = r.c;
    for (auto& a : t.A) a = a.transpose();
    return t;
}

// Basis of span{A_w b}, breadth-first with variables in index order.
struct Krylov {
    std::vector<QMatrix> vectors;
    std::vector<Word> words;
};

Krylov krylov(const Realization& r) {
    Krylov k;
    const std::size_t d = r.size();
    if (d == 0 || r.b.is_zero()) return k;
    SpanTracker tracker(d);
    tracker.add(r.b.entries());
    k.vectors.push_back(r.b);
    k.words.push_back({});
    for (std::size_t i = 0; i < k.vectors.size() && k.vectors.size() < d; ++i)
        for (std::size_t j = 0; j < r.g && k.vectors.size() < d; ++j) {
            QMatrix v = r.A[j] * k.vectors[i];
            if (!tracker.add(v.entries())) continue;
            k.vectors.push_back(std::move(v));
            Word w = k.words[i];
            w.insert(w.begin(), j);
            k.words.push_back(std::move(w));
        }
    return k;
}

// Restriction to the reachable subspace.
Realization reachable_part(const Realization& r) {
    const std::size_t d = r.size();
    Krylov k = krylov(r);
    if (k.vectors.size() == d) return r;
    if (k.vectors.empty()) return Realization::zero(r.g, r.base_point);
    QMatrix basis(d, k.vectors.size());
    for (std::size_t i = 0; i < k.vectors.size(); ++i) basis.set_block(0, i, k.vectors[i]);
    Realization out{r.g, basis.transpose() * r.c, {}, solve(basis, r.b), r.base_point};
    for (const auto& a : r.A) out.A.push_back(solve(basis, a * basis));
    return out;
}

}  // namespace

Realization constant_realization(std::size_t g, const Rat& value) {
    if (sgn(value) == 0) return Realization::zero(g);
    return Realization{g, QMatrix{{Rat(1)}}, std::vector<QMatrix>(g, QMatrix(1, 1)), QMatrix{{value}},
                       std::vector<Rat>(g, Rat(0))};
}

Realization variable_realization(std::size_t g, std::size_t index) {
    if (index >= g) throw VariableOutOfRange("variable x" + std::to_string(index + 1) + " out of range");
    Realization r{g, QMatrix{{Rat(1)}, {Rat(0)}}, std::vector<QMatrix>(g, QMatrix(2, 2)), QMatrix{{Rat(0)}, {Rat(1)}},
                  std::vector<Rat>(g, Rat(0))};
    r.A[index](0, 1) = 1;
    return r;
}

Realization add(const Realization& r1, const Realization& r2) {
    require_compatible(r1, r2);
    Realization s{r1.g, stack(r1.c, r2.c), {}, stack(r1.b, r2.b), r1.base_point};
    for (std::size_t j = 0; j < r1.g; ++j) s.A.push_back(direct_sum(r1.A[j], r2.A[j]));
    return s;
}

// Block upper-triangular product: c = (c1; 0), A_j = [[A1_j, b1 c2^t A2_j], [0, A2_j]],
// b = ((c2^t b2) b1; b2). The top-right block inserts the split w = u v with |v| >= 1 and the
// top-left block together with the first component of b covers v empty.
Realization multiply(const Realization& r1, const Realization& r2) {
    require_compatible(r1, r2);
    const std::size_t d1 = r1.size();
    const std::size_t d2 = r2.size();
    if (d1 == 0 || d2 == 0) return Realization::zero(r1.g, r1.base_point);
    const Rat gamma2 = dot(r2.c, r2.b);
    Realization p{r1.g, stack(r1.c, QMatrix(d2, 1)), {}, stack(gamma2 * r1.b, r2.b), r1.base_point};
    const QMatrix b1c2t = r1.b * r2.c.transpose();
    for (std::size_t j = 0; j < r1.g; ++j) {
        QMatrix a(d1 + d2, d1 + d2);
        a.set_block(0, 0, r1.A[j]);
        a.set_block(0, d1, b1c2t * r2.A[j]);
        a.set_block(d1, d1, r2.A[j]);
        p.A.push_back(std::move(a));
    }
    return p;
}

Realization negate(const Realization& r) { return scale(Rat(-1), r); }

Realization scale(const Rat& s, const Realization& r) {
    if (sgn(s) == 0) return Realization::zero(r.g, r.base_point);
    Realization out = r;
    out.c = s * r.c;
    return out;
}

// With gamma = c^t b != 0, s = 1 - r/gamma is proper and has the realization
// (lambda, mu, rho) = ((1; -c/gamma), diag(0, A_j), (1; b)) with lambda^t rho = 0. Then
// s + s^2 + ... is realized by (lambda, mu_j (I + rho lambda^t), rho), and
// r^{-1} = (1 + s + s^2 + ...) / gamma.
Realization invert(const Realization& r) {
    const Rat gamma = r.size() == 0 ? Rat(0) : dot(r.c, r.b);
    if (sgn(gamma) == 0) throw ZeroConstantTerm();
    const std::size_t d = r.size();
    const Rat inv_gamma = 1 / gamma;

    QMatrix lambda(d + 1, 1);
    lambda(0, 0) = 1;
    lambda.set_block(1, 0, -inv_gamma * r.c);
    QMatrix rho(d + 1, 1);
    rho(0, 0) = 1;
    rho.set_block(1, 0, r.b);
    const QMatrix cut = QMatrix::identity(d + 1) + rho * lambda.transpose();

    // One extra state carries the constant term 1 of the geometric series.
    Realization out{r.g, QMatrix(d + 2, 1), {}, QMatrix(d + 2, 1), r.base_point};
    out.c.set_block(0, 0, inv_gamma * lambda);
    out.c(d + 1, 0) = inv_gamma;
    out.b.set_block(0, 0, rho);
    out.b(d + 1, 0) = 1;
    for (std::size_t j = 0; j < r.g; ++j) {
        QMatrix mu(d + 1, d + 1);
        mu.set_block(1, 1, r.A[j]);
        QMatrix a(d + 2, d + 2);
        a.set_block(0, 0, mu * cut);
        out.A.push_back(std::move(a));
    }
    return minimize(out);
}

Realization minimize(const Realization& r) {
    validate(r);
    return transpose_realization(reachable_part(transpose_realization(reachable_part(r))));
}

std::vector<Word> krylov_words(const Realization& r) { return krylov(r).words; }

namespace {

Realization compose(const Expr& e, std::span<const Rat> alpha, std::size_t g, bool minimize_steps) {
    if (alpha.size() != g) throw DimensionMismatch("base point length differs from the variable count");
    if (variable_count(e) > g)
        throw VariableOutOfRange("expression uses x" + std::to_string(variable_count(e)) + " but g = " +
                                 std::to_string(g));
    EvalResult at_alpha = eval_scalar(e, alpha);
    if (!at_alpha.defined())
        throw NotRegularAtPoint("expression is undefined at the base point; singular inverse at " +
                                format(*at_alpha.undefined_at));

    const Expr shifted = shift_vars(e, alpha);
    std::unordered_map<const void*, Realization> memo;
    std::function<Realization(const Expr&)> walk = [&](const Expr& node) -> Realization {
        if (auto it = memo.find(node.id()); it != memo.end()) return it->second;
        Realization out;
        switch (node.kind()) {
            case Expr::Kind::Const: out = constant_realization(g, node.value()); break;
            case Expr::Kind::Var: out = variable_realization(g, node.index()); break;
            case Expr::Kind::Add: out = add(walk(node.lhs()), walk(node.rhs())); break;
            case Expr::Kind::Mul: out = multiply(walk(node.lhs()), walk(node.rhs())); break;
            case Expr::Kind::Neg: out = negate(walk(node.arg())); break;
            case Expr::Kind::Inv:
                try {
                    out = invert(walk(node.arg()));
                } catch (const ZeroConstantTerm&) {
                    throw NotRegularAtPoint("inverse with zero constant term at " + format(node));
                }
                break;
        }
        if (minimize_steps && (node.kind() == Expr::Kind::Add || node.kind() == Expr::Kind::Mul))
            out = minimize(out);
        memo.emplace(node.id(), out);
        return out;
    };
    Realization r = walk(shifted);
    r.base_point.assign(alpha.begin(), alpha.end());
    return r;
}

}  // namespace

Realization build(const Expr& e, std::span<const Rat> alpha, std::size_t g) {
    return minimize(compose(e, alpha, g, true));
}

Realization build_unminimized(const Expr& e, std::span<const Rat> alpha, std::size_t g) {
    return compose(e, alpha, g, false);
}

Realization transform(const Realization& r, const QMatrix& p) {
    const QMatrix p_inv = inverse(p);
    Realization out{r.g, p_inv.transpose() * r.c, {}, p * r.b, r.base_point};
    for (const auto& a : r.A) out.A.push_back(p * a * p_inv);
    return out;
}

std::optional<QMatrix> similar(const Realization& r1, const Realization& r2) {
    if (r1.g != r2.g || r1.base_point != r2.base_point || r1.size() != r2.size()) return std::nullopt;
    const std::size_t d = r1.size();
    if (d == 0) return QMatrix::identity(0);
    const Krylov k1 = krylov(r1);
    if (k1.vectors.size() != d) return std::nullopt;
    QMatrix basis1(d, d);
    QMatrix basis2(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        basis1.set_block(0, i, k1.vectors[i]);
        QMatrix v = r2.b;
        for (auto it = k1.words[i].rbegin(); it != k1.words[i].rend(); ++it) v = r2.A[*it] * v;
        basis2.set_block(0, i, v);
    }
    const QMatrix p = basis2 * inverse(basis1);
    if (!try_inverse(p)) return std::nullopt;
    if (p * r1.b != r2.b || p.transpose() * r2.c != r1.c) return std::nullopt;
    for (std::size_t j = 0; j < r1.g; ++j)
        if (p * r1.A[j] != r2.A[j] * p) return std::nullopt;
    return p;
}

Rat coefficient(const Realization& r, const Word& w) {
    if (r.size() == 0) return Rat(0);
    QMatrix v = r.b;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (*it >= r.g) throw VariableOutOfRange("word letter out of range");
        v = r.A[*it] * v;
    }
    return dot(r.c, v);
}

FreeSeries series(const Realization& r, std::size_t max_deg) {
    FreeSeries s(r.g, max_deg);
    if (r.size() == 0) return s;
    // Row vectors c^t A_w, extended letter by letter on the right.
    std::vector<std::pair<Word, QMatrix>> level{{Word{}, r.c.transpose()}};
    for (std::size_t len = 0; len <= max_deg; ++len) {
        std::vector<std::pair<Word, QMatrix>> next;
        for (const auto& [w, row] : level) {
            s.set(w, (row * r.b)(0, 0));
            if (len == max_deg) continue;
            for (std::size_t j = 0; j < r.g; ++j) {
                Word u = w;
                u.push_back(j);
                next.emplace_back(std::move(u), row * r.A[j]);
            }
        }
        level = std::move(next);
    }
    return s;
}

Realization left_shift(const Realization& r, std::size_t j) {
    if (j >= r.g) throw VariableOutOfRange("shift variable out of range");
    Realization out = r;
    if (r.size() > 0) out.c = r.A[j].transpose() * r.c;
    return minimize(out);
}

Realization right_shift(const Realization& r, std::size_t j) {
    if (j >= r.g) throw VariableOutOfRange("shift variable out of range");
    Realization out = r;
    if (r.size() > 0) out.b = r.A[j] * r.b;
    return minimize(out);
}

QMatrix pencil_at(const Realization& r, const MatTuple& x) {
    check_tuple(x);
    if (x.g() != r.g) throw DimensionMismatch("point has " + std::to_string(x.g()) + " matrices, realization has g = " +
                                              std::to_string(r.g));
    const MatTuple shifted = translate(x, r.base_point);
    QMatrix l = QMatrix::identity(r.size() * x.n);
    for (std::size_t j = 0; j < r.g; ++j)
        if (!r.A[j].is_zero()) l = l - kron(r.A[j], shifted[j]);
    return l;
}

std::optional<QMatrix> evaluate(const Realization& r, const MatTuple& x) {
    const QMatrix l = pencil_at(r, x);
    if (r.size() == 0) return QMatrix(x.n, x.n);
    auto l_inv = try_inverse(l);
    if (!l_inv) return std::nullopt;
    const QMatrix id = QMatrix::identity(x.n);
    return kron(r.c.transpose(), id) * *l_inv * kron(r.b, id);
}

std::optional<std::vector<Rat>> search_scalar_point(const std::function<bool(std::span<const Rat>)>& admissible,
                                                    std::size_t g, const SamplingOptions& opts) {
    std::vector<Rat> point(g, Rat(0));
    if (admissible(point)) return point;

    // Stage N = 1 enumerates the grid {0, 1, -1}^g when it fits in the budget; the remaining
    // stages sample uniformly from {-N..N}^g with N doubling.
    const std::size_t budget = 4 * opts.trials_per_stage;
    std::size_t grid = 1;
    for (std::size_t j = 0; j < g && grid <= budget; ++j) grid *= 3;
    std::size_t first_random_stage = 0;
    if (opts.stages > 0 && grid <= budget) {
        static const long digits[] = {0, 1, -1};
        for (std::size_t code = 1; code < grid; ++code) {
            std::size_t rest = code;
            for (std::size_t j = g; j-- > 0;) {
                point[j] = digits[rest % 3];
                rest /= 3;
            }
            if (admissible(point)) return point;
        }
        first_random_stage = 1;
    }
    std::mt19937_64 rng(opts.seed);
    for (std::size_t stage = first_random_stage; stage < opts.stages; ++stage) {
        const long bound = 1L << stage;
        std::uniform_int_distribution<long> dist(-bound, bound);
        for (std::size_t t = 0; t < opts.trials_per_stage; ++t) {
            for (auto& v : point) v = dist(rng);
            if (admissible(point)) return point;
        }
    }
    return std::nullopt;
}

EqualityVerdict equal_realizations(const Realization& r1, const Realization& r2) {
    require_compatible(r1, r2);
    const Realization diff = minimize(add(r1, negate(r2)));
    EqualityVerdict v;
    v.point = r1.base_point;
    if (diff.size() == 0) {
        v.kind = EqualityVerdict::Kind::Equal;
        return v;
    }
    v.kind = EqualityVerdict::Kind::Unequal;
    // A nonzero series of Hankel rank d has a nonzero coefficient at some word of length < d.
    for (const Word& w : words_up_to(diff.g, diff.size())) {
        Rat a = coefficient(diff, w);
        if (sgn(a) != 0) {
            v.word = w;
            v.difference = a;
            break;
        }
    }
    return v;
}

EqualityVerdict equal(const Expr& e1, const Expr& e2, std::size_t g, const SamplingOptions& opts) {
    auto both_defined = [&](std::span<const Rat> p) {
        return eval_scalar(e1, p).defined() && eval_scalar(e2, p).defined();
    };
    auto alpha = search_scalar_point(both_defined, g, opts);
    if (!alpha) return EqualityVerdict{};
    return equal_realizations(build(e1, *alpha, g), build(e2, *alpha, g));
}

}  // namespace ncdomain
