#pragma once

#include <cstddef>
#include <vector>

#include "ncdomain/domain.hpp"
#include "ncdomain/free_series.hpp"
#include "ncdomain/matrix.hpp"

namespace ncdomain {

/// A point X = (X1, X2, X3, X4) on the span of words u0, u1..uM, w1..wN (basis order) at which
/// f(X) is singular while X lies in the domain of (x4 - x3 x1^-1 x2)^-1.
struct CounterexampleData {
    FreeSeries f;
    // f(X) = normalized(X'_perm) for the tuple X' built on the normalized polynomial.
    std::vector<std::size_t> permutation;
    FreeSeries normalized;  // f(x_perm[0], ..., x_perm[3]) scaled so x1 u0 has coefficient 1
    FreeSeries h;  // x1 u0 - normalized
    Word u0;
    std::size_t d = 0;
    std::size_t M = 0;
    std::size_t N = 0;
    std::vector<Word> basis;  // u0, u1..uM (length then lex), w1..wN (lex)
    MatTuple X;

    std::size_t size() const { return basis.size(); }
};

// f must be a polynomial in at most four variables of degree d > 0; throws NoLeadingMonomial
// otherwise.
CounterexampleData build_counterexample(const FreeSeries& f);

// Checks: f(X) kills the empty word, det [[X1, X2], [X3, X4]] != 0, and X lies in the pencil
// domain of inv(x4 - x3*inv(x1)*x2) about (1, 0, 0, 1).
std::vector<Check> verify_counterexample(const CounterexampleData& cd);

}  // namespace ncdomain
