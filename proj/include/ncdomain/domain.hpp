#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncdomain/expr.hpp"
#include "ncdomain/matrix.hpp"
#include "ncdomain/mpoly.hpp"
#include "ncdomain/realization.hpp"

namespace ncdomain {

// A scalar point where e evaluates, searched deterministically (see search_scalar_point).
// nullopt is inconclusive: it never asserts that the scalar domain is empty.
std::optional<std::vector<Rat>> find_scalar_point(const Expr& e, std::size_t g, const SamplingOptions& opts = {});

/// Domain of a rational function regular at a scalar point alpha, described by the monic
/// pencil of its minimal realization about alpha: X is in the domain iff
/// det L(X - I alpha) != 0. The same set is the stable extended domain.
class PencilDomain {
public:
    // Builds and minimizes the realization of e about alpha; throws NotRegularAtPoint.
    PencilDomain(const Expr& e, std::span<const Rat> alpha, std::size_t g);
    // Wraps a realization, minimizing it first.
    explicit PencilDomain(const Realization& r);

    const Realization& realization() const { return realization_; }
    std::size_t g() const { return realization_.g; }
    std::size_t size() const { return realization_.size(); }
    const std::vector<Rat>& base_point() const { return realization_.base_point; }

    bool contains(const MatTuple& x) const;
    // det L(X - I alpha).
    Rat pencil_det(const MatTuple& x) const;

private:
    Realization realization_;
};

// det L(x - alpha) at scalar points as a polynomial in x1..xg (variable j - 1 is x_j).
MPoly scalar_pencil_det(const PencilDomain& pd);

/// An expression representing the same function as pd, defined at x, with
/// eval(witness, x) == evaluate(pd.realization(), x). Built by inverting the pencil through a
/// polynomial rescaling f(M) M (f from the minimal polynomial of M(x), so that f(M(x)) M(x) = I)
/// and recursive Schur complements on the leading entry. Throws NotInDomain if !contains(x).
Expr witness(const PencilDomain& pd, const MatTuple& x);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// For sampled X in the pencil domain of r (base point 0), checks that X is also in the pencil
// domain of the minimized left shift by x_j.
std::vector<Check> shift_domain_inclusion_check(const PencilDomain& pd, std::size_t j,
                                                const std::vector<MatTuple>& samples);

}  // namespace ncdomain
