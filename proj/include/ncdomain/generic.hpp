#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncdomain/expr.hpp"
#include "ncdomain/matrix.hpp"
#include "ncdomain/mpoly.hpp"
#include "ncdomain/ratfn.hpp"

namespace ncdomain {

// Hard bounds for symbolic work; exceeding them raises SymbolicSizeLimit.
struct SymbolicLimits {
    std::size_t max_vars = 16;  // g * n^2
    std::size_t max_degree = 24;  // total degree of any numerator or denominator
};

// Generic n x n matrices Xi_1..Xi_g: variable xi_{j,k,l} (entry (k,l) of Xi_j) has index
// j*n*n + k*n + l.
struct GenericLayout {
    std::size_t g = 0;
    std::size_t n = 0;

    std::size_t nvars() const { return g * n * n; }
    std::size_t index(std::size_t j, std::size_t k, std::size_t l) const { return (j * n + k) * n + l; }
    // "xi_j_k_l" with 1-based j, k, l.
    std::string name(std::size_t var) const;
    // Values of every variable at the point x.
    std::vector<Rat> coordinates(const MatTuple& x) const;
};

/// r(Xi) for n x n generic matrices: entries as normalized commutative rational functions and
/// the monic lcm of their denominators, whose nonvanishing set is edom_n.
struct GenericEvaluation {
    GenericLayout layout;
    std::vector<MRatFn> entries;  // row-major n x n
    MPoly denom_lcm;

    const MRatFn& entry(std::size_t k, std::size_t l) const { return entries[k * layout.n + l]; }
};

// Throws DegenerateAtSize when some inverse meets a matrix whose determinant is the zero
// polynomial (dom_n e is empty for this representative), SymbolicSizeLimit past the limits.
GenericEvaluation generic_eval(const Expr& e, std::size_t g, std::size_t n, const SymbolicLimits& limits = {});

// denom_lcm(X) != 0.
bool edom_member(const GenericEvaluation& ge, const MatTuple& x);

// Exact value r(X) obtained by substituting X into every entry; requires edom_member.
QMatrix substitute(const GenericEvaluation& ge, const MatTuple& x);

/// p(Xi' + Xi'') = p1(Xi') p2(Xi'') for the denominator lcm p of r[2n]; p1 and p2 are
/// polynomials in the n x n generic layout, p1 monic.
struct DirectSumFactors {
    GenericLayout layout;  // n x n
    MPoly p1;
    MPoly p2;
    MPoly block_diagonal;  // p restricted to the block-diagonal pattern, over 2 * g * n^2 variables
};

// Throws Error when the block-diagonal restriction does not split into variable-disjoint
// factors.
DirectSumFactors direct_sum_factorization(const Expr& e, std::size_t g, std::size_t n,
                                          const SymbolicLimits& limits = {});

struct AmpliationRow {
    std::size_t copies;
    bool member;
};

// edom membership of I_l (x) X for l = 1..max_copies.
std::vector<AmpliationRow> ampliation_probe(const Expr& e, const MatTuple& x, std::size_t max_copies,
                                            const SymbolicLimits& limits = {});

}  // namespace ncdomain
