#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "ncdomain/expr.hpp"
#include "ncdomain/free_series.hpp"
#include "ncdomain/matrix.hpp"

namespace ncdomain::testing {

using Rng = std::mt19937_64;

// Random expression over x1..xg: leaves are variables or small rationals, inner nodes
// +, *, unary minus and inverse. Depth counts inner nodes along the longest path.
Expr random_expr(Rng& rng, std::size_t g, std::size_t depth);

// Entries drawn from {-range..range}; with `sparse` about half of them are zero.
QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range = 2, bool sparse = false);
MatTuple random_tuple(Rng& rng, std::size_t g, std::size_t n, long range = 2, bool sparse = false);
// A random invertible n x n matrix.
QMatrix random_invertible(Rng& rng, std::size_t n);

// Sum over permutations; only for small n.
Rat leibniz_det(const QMatrix& a);

// Rank of the Hankel block [coeff(u v)] for |u|, |v| <= len; needs s truncated at >= 2 len.
std::size_t hankel_rank(const FreeSeries& s, std::size_t len);

}  // namespace ncdomain::testing
