#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace ncdomain::testing {

Expr random_expr(Rng& rng, std::size_t g, std::size_t depth) {
    std::uniform_int_distribution<int> pick(0, 99);
    if (depth == 0 || pick(rng) < 25) {
        if (g > 0 && pick(rng) < 70) return Expr::variable(std::uniform_int_distribution<std::size_t>(0, g - 1)(rng));
        static const std::vector<Rat> constants{Rat(1), Rat(2), Rat(-1), Rat(3), Rat(1, 2), Rat(-2, 3)};
        return Expr::constant(constants[std::uniform_int_distribution<std::size_t>(0, constants.size() - 1)(rng)]);
    }
    const int op = pick(rng);
    if (op < 35) return random_expr(rng, g, depth - 1) + random_expr(rng, g, depth - 1);
    if (op < 65) return random_expr(rng, g, depth - 1) * random_expr(rng, g, depth - 1);
    if (op < 72) return -random_expr(rng, g, depth - 1);
    return Expr::inv(random_expr(rng, g, depth - 1));
}

QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range, bool sparse) {
    std::uniform_int_distribution<long> entry(-range, range);
    std::bernoulli_distribution zero(0.5);
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = sparse && zero(rng) ? 0 : entry(rng);
    return m;
}

MatTuple random_tuple(Rng& rng, std::size_t g, std::size_t n, long range, bool sparse) {
    MatTuple x{n, {}};
    for (std::size_t j = 0; j < g; ++j) x.mats.push_back(random_matrix(rng, n, n, range, sparse));
    return x;
}

QMatrix random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        QMatrix s = random_matrix(rng, n, n, 3);
        if (sgn(leibniz_det(s)) != 0) return s;
    }
}

Rat leibniz_det(const QMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rat total = 0;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rat term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

std::size_t hankel_rank(const FreeSeries& s, std::size_t len) {
    const auto words = words_up_to(s.g(), len);
    QMatrix h(words.size(), words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            Word w = words[i];
            w.insert(w.end(), words[j].begin(), words[j].end());
            h(i, j) = s.coefficient(w);
        }
    // Plain fraction elimination, kept separate from the library's rank().
    std::size_t r = 0;
    for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
        std::size_t p = r;
        while (p < h.rows() && sgn(h(p, col)) == 0) ++p;
        if (p == h.rows()) continue;
        for (std::size_t k = 0; k < h.cols(); ++k) std::swap(h(p, k), h(r, k));
        for (std::size_t i = r + 1; i < h.rows(); ++i) {
            if (sgn(h(i, col)) == 0) continue;
            const Rat f = h(i, col) / h(r, col);
            for (std::size_t k = col; k < h.cols(); ++k) h(i, k) -= f * h(r, k);
        }
        ++r;
    }
    return r;
}

}  // namespace ncdomain::testing
