#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ncdomain/expr.hpp"
#include "ncdomain/free_series.hpp"
#include "ncdomain/matrix.hpp"

namespace ncdomain {

/// Recognizable-series realization of size d about a base point alpha:
///   r(x) = c^t (I - sum_j A_j (x_j - alpha_j))^{-1} b,
/// whose expansion about alpha has coefficient c^t A_{j1} ... A_{jk} b at the word x_{j1}...x_{jk}.
/// Size 0 is the zero function.
struct Realization {
    std::size_t g = 0;
    QMatrix c;  // d x 1
    std::vector<QMatrix> A;  // g matrices, d x d
    QMatrix b;  // d x 1
    std::vector<Rat> base_point;

    std::size_t size() const { return c.rows(); }

    static Realization zero(std::size_t g, std::vector<Rat> base_point = {});
};

// Throws DimensionMismatch when the data are not shape-consistent.
void validate(const Realization& r);

Realization constant_realization(std::size_t g, const Rat& value);
Realization variable_realization(std::size_t g, std::size_t index);

Realization add(const Realization& r1, const Realization& r2);
Realization multiply(const Realization& r1, const Realization& r2);
Realization negate(const Realization& r);
Realization scale(const Rat& s, const Realization& r);
// Throws ZeroConstantTerm when c^t b = 0.
Realization invert(const Realization& r);

// Reachable then observable reduction; the result has the minimal size among all
// realizations of the same series.
Realization minimize(const Realization& r);

// Words w, breadth-first in variable order, whose vectors A_w b form a basis of the
// reachable space.
std::vector<Word> krylov_words(const Realization& r);

// Realization of e about alpha. Throws NotRegularAtPoint if e is undefined at the scalar
// point alpha. `build` minimizes along the way; `build_unminimized` only inside inverses.
Realization build(const Expr& e, std::span<const Rat> alpha, std::size_t g);
Realization build_unminimized(const Expr& e, std::span<const Rat> alpha, std::size_t g);

// c' = P^{-t} c, b' = P b, A'_j = P A_j P^{-1}.
Realization transform(const Realization& r, const QMatrix& p);
// For minimal r1, r2: the unique P with transform(r1, P) == r2, if any.
std::optional<QMatrix> similar(const Realization& r1, const Realization& r2);

Rat coefficient(const Realization& r, const Word& w);
FreeSeries series(const Realization& r, std::size_t max_deg);

// Series sum_w a_{x_j w} w (c -> A_j^t c) and sum_w a_{w x_j} w (b -> A_j b), minimized.
Realization left_shift(const Realization& r, std::size_t j);
Realization right_shift(const Realization& r, std::size_t j);

// L(X - I alpha) = I (x) I - sum_j A_j (x) (X_j - alpha_j I).
QMatrix pencil_at(const Realization& r, const MatTuple& x);
// (c^t (x) I) L^{-1} (b (x) I), or nullopt when the pencil is singular at x.
std::optional<QMatrix> evaluate(const Realization& r, const MatTuple& x);

struct SamplingOptions {
    std::uint64_t seed = 0;
    std::size_t trials_per_stage = 64;
    std::size_t stages = 4;
};

// Deterministic search for a scalar point accepted by `admissible`: the grid {0, 1, -1}^g in
// lexicographic order first (0 before 1 before -1), then random points with entries in
// {-N..N} for N = 2, 4, 8, ...
std::optional<std::vector<Rat>> search_scalar_point(const std::function<bool(std::span<const Rat>)>& admissible,
                                                    std::size_t g, const SamplingOptions& opts = {});

struct EqualityVerdict {
    enum class Kind { Equal, Unequal, Unknown };
    Kind kind = Kind::Unknown;
    // For Unequal: a word whose coefficient in the difference about `point` is nonzero.
    std::optional<Word> word;
    Rat difference;
    std::vector<Rat> point;
};

EqualityVerdict equal_realizations(const Realization& r1, const Realization& r2);
EqualityVerdict equal(const Expr& e1, const Expr& e2, std::size_t g, const SamplingOptions& opts = {});

}  // namespace ncdomain
