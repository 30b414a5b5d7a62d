#include <cstddef>
#include <vector>

#include "ncdomain/domain.hpp"
#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

// Smart constructors: fold the constants 0 and 1 so the grids stay sparse.
bool is_zero_expr(const Expr& e) { return e.is_const(Rat(0)); }
bool is_one_expr(const Expr& e) { return e.is_const(Rat(1)); }

Expr sum(const Expr& a, const Expr& b) {
    if (is_zero_expr(a)) return b;
    if (is_zero_expr(b)) return a;
    return a + b;
}

Expr product(const Expr& a, const Expr& b) {
    if (is_zero_expr(a) || is_zero_expr(b)) return Expr::constant(Rat(0));
    if (is_one_expr(a)) return b;
    if (is_one_expr(b)) return a;
    return a * b;
}

Expr negative(const Expr& a) {
    if (is_zero_expr(a)) return a;
    if (a.kind() == Expr::Kind::Neg) return a.arg();
    return -a;
}

Expr inverse(const Expr& a) { return is_one_expr(a) ? a : Expr::inv(a); }

Expr scaled(const Rat& s, const Expr& a) {
    if (s == 1) return a;
    if (s == -1) return negative(a);
    return product(Expr::constant(s), a);
}

struct Grid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Expr> cells;

    Grid(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c, Expr::constant(Rat(0))) {}

    Expr& operator()(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
    const Expr& operator()(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

    static Grid identity(std::size_t d) {
        Grid g(d, d);
        for (std::size_t i = 0; i < d; ++i) g(i, i) = Expr::constant(Rat(1));
        return g;
    }
};

Grid operator*(const Grid& a, const Grid& b) {
    Grid m(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Expr acc = Expr::constant(Rat(0));
            for (std::size_t k = 0; k < a.cols; ++k) acc = sum(acc, product(a(i, k), b(k, j)));
            m(i, j) = acc;
        }
    return m;
}

class Inverter {
public:
    explicit Inverter(const MatTuple& x) : eval_(x), n_(x.n) {}

    // Value at the point, assembled as a (rows*n) x (cols*n) block matrix.
    QMatrix value(const Grid& grid) {
        QMatrix v(grid.rows * n_, grid.cols * n_);
        for (std::size_t i = 0; i < grid.rows; ++i)
            for (std::size_t j = 0; j < grid.cols; ++j) {
                const EvalResult r = eval_(grid(i, j));
                if (!r.defined()) throw Error("witness entry undefined at the point: " + format_bounded(grid(i, j), 200).value_or("(large)"));
                v.set_block(i * n_, j * n_, *r.value);
            }
        return v;
    }

    // Entrywise inverse of a grid whose block value at the point is invertible.
    Grid invert(const Grid& m) {
        const std::size_t d = m.rows;
        if (d == 0) return Grid(0, 0);
        if (d == 1) {
            Grid out(1, 1);
            out(0, 0) = inverse(m(0, 0));
            return out;
        }
        const QMatrix v = value(m);

        // f(M(X)) M(X) = I with f from the minimal polynomial; skipped when M(X) = I already.
        bool rescaled = false;
        Grid f = Grid::identity(d);
        Grid mt = m;
        if (v != QMatrix::identity(d * n_)) {
            f = rescaling(m, min_poly(v));
            mt = f * m;
            rescaled = true;
        }

        const Expr uinv = inverse(mt(0, 0));
        Grid schur(d - 1, d - 1);
        std::vector<Expr> left(d - 1, Expr::constant(Rat(0)));  // M~_{i1} u^-1
        for (std::size_t i = 0; i < d - 1; ++i) left[i] = product(mt(i + 1, 0), uinv);
        for (std::size_t i = 0; i < d - 1; ++i)
            for (std::size_t j = 0; j < d - 1; ++j)
                schur(i, j) = sum(mt(i + 1, j + 1), negative(product(left[i], mt(0, j + 1))));
        const Grid s = invert(schur);

        Grid inv(d, d);
        std::vector<Expr> top(d - 1, Expr::constant(Rat(0)));  // u^-1 M~_{1j}
        for (std::size_t j = 0; j < d - 1; ++j) top[j] = product(uinv, mt(0, j + 1));
        for (std::size_t j = 0; j < d - 1; ++j) {
            Expr acc = Expr::constant(Rat(0));
            for (std::size_t k = 0; k < d - 1; ++k) acc = sum(acc, product(top[k], s(k, j)));
            inv(0, j + 1) = negative(acc);
        }
        for (std::size_t i = 0; i < d - 1; ++i) {
            Expr acc = Expr::constant(Rat(0));
            for (std::size_t k = 0; k < d - 1; ++k) acc = sum(acc, product(s(i, k), left[k]));
            inv(i + 1, 0) = negative(acc);
        }
        Expr corner = uinv;
        for (std::size_t k = 0; k < d - 1; ++k) corner = sum(corner, negative(product(top[k], inv(k + 1, 0))));
        inv(0, 0) = corner;
        for (std::size_t i = 0; i < d - 1; ++i)
            for (std::size_t j = 0; j < d - 1; ++j) inv(i + 1, j + 1) = s(i, j);
        return rescaled ? inv * f : inv;
    }

private:
    // f(M) for f(t) = -(t^{k-1} + a_{k-1} t^{k-2} + ... + a_1) / a_0, by Horner.
    Grid rescaling(const Grid& m, const UPoly& p) {
        const std::size_t k = p.degree();
        const Rat& a0 = p.coeffs[0];
        if (sgn(a0) == 0) throw NotInDomain("pencil is singular at the point");
        const std::size_t d = m.rows;
        auto scalar_grid = [&](const Rat& s) {
            Grid g(d, d);
            for (std::size_t i = 0; i < d; ++i) g(i, i) = Expr::constant(s);
            return g;
        };
        auto add_scalar = [&](Grid g, const Rat& s) {
            for (std::size_t i = 0; i < d; ++i) g(i, i) = sum(g(i, i), Expr::constant(s));
            return g;
        };
        const Rat scale = -1 / a0;
        Grid acc = scalar_grid(scale);  // leading coefficient of f
        for (std::size_t i = k; i-- > 1;) acc = add_scalar(acc * m, scale * p.coeffs[i]);
        return acc;
    }

    Evaluator eval_;
    std::size_t n_;
};

}  // namespace

Expr witness(const PencilDomain& pd, const MatTuple& x) {
    const Realization& r = pd.realization();
    check_tuple(x);
    if (x.g() != r.g) throw DimensionMismatch("point has the wrong number of matrices");
    if (!pd.contains(x)) throw NotInDomain("point is outside the pencil domain");
    const std::size_t d = r.size();
    if (d == 0) return Expr::constant(Rat(0));

    Grid m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Rat k = i == j ? Rat(1) : Rat(0);
            for (std::size_t v = 0; v < r.g; ++v) k += r.A[v](i, j) * r.base_point[v];
            Expr e = Expr::constant(k);
            for (std::size_t v = 0; v < r.g; ++v)
                if (sgn(r.A[v](i, j)) != 0) e = sum(e, scaled(-r.A[v](i, j), Expr::variable(v)));
            m(i, j) = e;
        }

    Inverter inverter(x);
    const Grid inv = inverter.invert(m);
    Expr result = Expr::constant(Rat(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Rat w = r.c(i, 0) * r.b(j, 0);
            if (sgn(w) != 0) result = sum(result, scaled(w, inv(i, j)));
        }
    return result;
}

}  // namespace ncdomain
