#include "ncdomain/generic.hpp"

#include <functional>
#include <random>
#include <unordered_map>

#include "ncdomain/errors.hpp"

namespace ncdomain {

std::string GenericLayout::name(std::size_t var) const {
    const std::size_t l = var % n;
    const std::size_t k = (var / n) % n;
    const std::size_t j = var / (n * n);
    return "xi_" + std::to_string(j + 1) + "_" + std::to_string(k + 1) + "_" + std::to_string(l + 1);
}

std::vector<Rat> GenericLayout::coordinates(const MatTuple& x) const {
    check_tuple(x);
    if (x.n != n || x.g() != g)
        throw DimensionMismatch("point of size " + std::to_string(x.n) + " with " + std::to_string(x.g()) +
                                " matrices does not match the generic layout");
    std::vector<Rat> coords(nvars());
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) coords[index(j, k, l)] = x[j](k, l);
    return coords;
}

namespace {

using SymMatrix = std::vector<MRatFn>;  // row-major n x n

class SymbolicEvaluator {
public:
    SymbolicEvaluator(const GenericLayout& layout, const SymbolicLimits& limits) : layout_(layout), limits_(limits) {}

    SymMatrix eval(const Expr& node) {
        if (auto it = memo_.find(node.id()); it != memo_.end()) return it->second;
        SymMatrix out;
        switch (node.kind()) {
            case Expr::Kind::Const: out = scalar(node.value()); break;
            case Expr::Kind::Var: out = generic(node.index()); break;
            case Expr::Kind::Add: out = add(eval(node.lhs()), eval(node.rhs())); break;
            case Expr::Kind::Mul: out = mul(eval(node.lhs()), eval(node.rhs())); break;
            case Expr::Kind::Neg:
                out = eval(node.arg());
                for (auto& x : out) x = -x;
                break;
            case Expr::Kind::Inv: out = invert(eval(node.arg()), node); break;
        }
        check(out);
        return memo_.emplace(node.id(), std::move(out)).first->second;
    }

private:
    std::size_t n() const { return layout_.n; }
    MRatFn zero() const { return MRatFn(MPoly(layout_.nvars())); }

    SymMatrix scalar(const Rat& v) const {
        SymMatrix m(n() * n(), zero());
        for (std::size_t i = 0; i < n(); ++i) m[i * n() + i] = MRatFn::constant(layout_.nvars(), v);
        return m;
    }

    SymMatrix generic(std::size_t j) const {
        SymMatrix m;
        for (std::size_t k = 0; k < n(); ++k)
            for (std::size_t l = 0; l < n(); ++l)
                m.emplace_back(MPoly::variable(layout_.nvars(), layout_.index(j, k, l)));
        return m;
    }

    SymMatrix add(const SymMatrix& a, const SymMatrix& b) const {
        SymMatrix m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
        return m;
    }

    SymMatrix mul(const SymMatrix& a, const SymMatrix& b) const {
        SymMatrix m(n() * n(), zero());
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t j = 0; j < n(); ++j) {
                MRatFn acc = zero();
                for (std::size_t k = 0; k < n(); ++k) {
                    const MRatFn& x = a[i * n() + k];
                    const MRatFn& y = b[k * n() + j];
                    if (x.is_zero() || y.is_zero()) continue;
                    acc = acc + x * y;
                }
                m[i * n() + j] = std::move(acc);
            }
        return m;
    }

    // Gauss-Jordan elimination over the field of rational functions.
    SymMatrix invert(SymMatrix a, const Expr& node) {
        const std::size_t size = n();
        SymMatrix inv = scalar(Rat(1));
        for (std::size_t col = 0; col < size; ++col) {
            std::size_t pivot = col;
            while (pivot < size && a[pivot * size + col].is_zero()) ++pivot;
            if (pivot == size)
                throw DegenerateAtSize("inverse of a generically singular " + std::to_string(size) + "x" +
                                       std::to_string(size) + " matrix at " + format(node));
            if (pivot != col)
                for (std::size_t j = 0; j < size; ++j) {
                    std::swap(a[pivot * size + j], a[col * size + j]);
                    std::swap(inv[pivot * size + j], inv[col * size + j]);
                }
            const MRatFn scale = a[col * size + col].inverse();
            for (std::size_t j = 0; j < size; ++j) {
                if (!a[col * size + j].is_zero()) a[col * size + j] = a[col * size + j] * scale;
                if (!inv[col * size + j].is_zero()) inv[col * size + j] = inv[col * size + j] * scale;
            }
            for (std::size_t i = 0; i < size; ++i) {
                if (i == col || a[i * size + col].is_zero()) continue;
                const MRatFn factor = a[i * size + col];
                for (std::size_t j = 0; j < size; ++j) {
                    if (!a[col * size + j].is_zero()) a[i * size + j] = a[i * size + j] - factor * a[col * size + j];
                    if (!inv[col * size + j].is_zero())
                        inv[i * size + j] = inv[i * size + j] - factor * inv[col * size + j];
                }
            }
        }
        return inv;
    }

    void check(const SymMatrix& m) const {
        for (const auto& x : m)
            if (x.num().total_degree() > limits_.max_degree || x.den().total_degree() > limits_.max_degree)
                throw SymbolicSizeLimit("symbolic degree exceeds the limit of " + std::to_string(limits_.max_degree));
    }

    GenericLayout layout_;
    SymbolicLimits limits_;
    std::unordered_map<const void*, SymMatrix> memo_;
};

void check_layout(const GenericLayout& layout, const SymbolicLimits& limits) {
    if (layout.nvars() > limits.max_vars)
        throw SymbolicSizeLimit("generic evaluation needs " + std::to_string(layout.nvars()) +
                                " commuting variables, limit is " + std::to_string(limits.max_vars));
}

}  // namespace

GenericEvaluation generic_eval(const Expr& e, std::size_t g, std::size_t n, const SymbolicLimits& limits) {
    if (n == 0) throw DimensionMismatch("generic matrices need n >= 1");
    if (variable_count(e) > g) throw VariableOutOfRange("expression uses more than g variables");
    GenericLayout layout{g, n};
    check_layout(layout, limits);
    SymbolicEvaluator evaluator(layout, limits);
    GenericEvaluation ge{layout, evaluator.eval(e), MPoly::constant(layout.nvars(), Rat(1))};
    for (const auto& entry : ge.entries) ge.denom_lcm = lcm(ge.denom_lcm, entry.den());
    return ge;
}

bool edom_member(const GenericEvaluation& ge, const MatTuple& x) {
    return sgn(ge.denom_lcm.evaluate(ge.layout.coordinates(x))) != 0;
}

QMatrix substitute(const GenericEvaluation& ge, const MatTuple& x) {
    const auto coords = ge.layout.coordinates(x);
    QMatrix m(ge.layout.n, ge.layout.n);
    for (std::size_t k = 0; k < ge.layout.n; ++k)
        for (std::size_t l = 0; l < ge.layout.n; ++l) m(k, l) = ge.entry(k, l).evaluate(coords);
    return m;
}

DirectSumFactors direct_sum_factorization(const Expr& e, std::size_t g, std::size_t n, const SymbolicLimits& limits) {
    const GenericEvaluation ge = generic_eval(e, g, 2 * n, limits);
    const GenericLayout half{g, n};
    const std::size_t m = half.nvars();
    const GenericLayout& full = ge.layout;

    // Xi' occupies variables [0, m), Xi'' occupies [m, 2m); off-diagonal blocks are set to 0.
    std::vector<std::optional<std::size_t>> target(full.nvars());
    std::vector<Rat> zeros(full.nvars(), Rat(0));
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t k = 0; k < 2 * n; ++k)
            for (std::size_t l = 0; l < 2 * n; ++l) {
                const std::size_t v = full.index(j, k, l);
                if (k < n && l < n) target[v] = half.index(j, k, l);
                else if (k >= n && l >= n) target[v] = m + half.index(j, k - n, l - n);
            }
    const MPoly p = ge.denom_lcm.remap(2 * m, target, zeros);
    if (p.is_zero()) throw Error("denominator vanishes identically on block-diagonal tuples");

    // Any point where p does not vanish separates the two factors up to scalars.
    std::vector<Rat> point(2 * m, Rat(0));
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> dist(-3, 3);
    for (int attempt = 0; sgn(p.evaluate(point)) == 0; ++attempt) {
        if (attempt > 1000) throw Error("no nonvanishing point found for the block-diagonal denominator");
        for (auto& v : point) v = dist(rng);
    }

    std::vector<std::optional<std::size_t>> keep_first(2 * m), lift_first(m);
    for (std::size_t i = 0; i < m; ++i) {
        keep_first[i] = i;
        lift_first[i] = i;
    }
    const MPoly p1 = p.remap(m, keep_first, point).monic();
    const MPoly p1_lifted = p1.remap(2 * m, lift_first, std::vector<Rat>(m));
    auto quotient = try_divide(p, p1_lifted);
    if (!quotient) throw Error("block-diagonal denominator does not factor over the two blocks");
    for (std::size_t i = 0; i < m; ++i)
        if (quotient->depends_on(i)) throw Error("block-diagonal denominator does not factor over the two blocks");
    std::vector<std::optional<std::size_t>> keep_second(2 * m);
    for (std::size_t i = 0; i < m; ++i) keep_second[m + i] = i;
    const MPoly p2 = quotient->remap(m, keep_second, point);
    return DirectSumFactors{half, p1, p2, p};
}

std::vector<AmpliationRow> ampliation_probe(const Expr& e, const MatTuple& x, std::size_t max_copies,
                                            const SymbolicLimits& limits) {
    check_tuple(x);
    std::vector<AmpliationRow> rows;
    for (std::size_t copies = 1; copies <= max_copies; ++copies) {
        bool member = false;
        try {
            const GenericEvaluation ge = generic_eval(e, x.g(), copies * x.n, limits);
            member = edom_member(ge, ampliate(x, copies));
        } catch (const DegenerateAtSize&) {
            member = false;  // edom at this size is empty
        }
        rows.push_back({copies, member});
    }
    return rows;
}

}  // namespace ncdomain
