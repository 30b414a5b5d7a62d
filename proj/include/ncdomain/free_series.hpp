#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ncdomain/expr.hpp"
#include "ncdomain/matrix.hpp"
#include "ncdomain/rational.hpp"

namespace ncdomain {

// A word x_{j1}...x_{jk} in the free monoid, stored as 0-based variable indices.
using Word = std::vector<std::size_t>;

// "1" for the empty word, otherwise e.g. "x2*x1".
std::string format_word(const Word& w);
// All words over g letters of length <= max_len, ordered by length then lexicographically.
std::vector<Word> words_up_to(std::size_t g, std::size_t max_len);

/// Truncated noncommutative power series sum_w a_w w with |w| <= max_deg. Zero coefficients
/// are never stored. With max_deg at least the degree it doubles as an nc polynomial.
class FreeSeries {
public:
    FreeSeries(std::size_t g, std::size_t max_deg) : g_(g), max_deg_(max_deg) {}

    static FreeSeries constant(std::size_t g, std::size_t max_deg, const Rat& value);
    static FreeSeries variable(std::size_t g, std::size_t max_deg, std::size_t index);

    std::size_t g() const { return g_; }
    std::size_t max_deg() const { return max_deg_; }
    const std::map<Word, Rat>& terms() const { return terms_; }

    Rat coefficient(const Word& w) const;
    void set(const Word& w, const Rat& value);
    // Largest word length with a nonzero coefficient; 0 for the zero series.
    std::size_t degree() const;
    bool is_zero() const { return terms_.empty(); }

    FreeSeries operator+(const FreeSeries& o) const;
    FreeSeries operator-(const FreeSeries& o) const;
    FreeSeries operator-() const;
    FreeSeries operator*(const FreeSeries& o) const;
    FreeSeries scaled(const Rat& s) const;

    friend bool operator==(const FreeSeries& a, const FreeSeries& b) = default;

private:
    void check_compatible(const FreeSeries& o) const;

    std::size_t g_;
    std::size_t max_deg_;
    std::map<Word, Rat> terms_;
};

// Expansion of e about 0 truncated at max_deg. Throws NotRegularAtZero when some inverse has
// a zero constant term.
FreeSeries expand_series(const Expr& e, std::size_t g, std::size_t max_deg);

// Exact nc polynomial of an inverse-free expression (throws Error if e has an inverse).
FreeSeries nc_polynomial(const Expr& e, std::size_t g);

// sum_w a_w X_w evaluated at a matrix point.
QMatrix evaluate(const FreeSeries& p, const MatTuple& x);

// p(x_{perm[0]}, ..., x_{perm[g-1]}): every letter j in a word becomes perm[j].
FreeSeries substitute_letters(const FreeSeries& p, const std::vector<std::size_t>& perm);

}  // namespace ncdomain
