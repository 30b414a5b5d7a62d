#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncdomain/rational.hpp"

namespace ncdomain {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, then lexicographic with variable 0 most
// significant.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse commutative polynomial over Q in a fixed number of variables. Terms are kept in
/// graded-lex order; zero coefficients are never stored.
class MPoly {
public:
    using Terms = std::map<Exponents, Rat, GrlexLess>;

    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rat& value);
    static MPoly variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant value; meaningful only when is_constant().
    Rat constant_value() const;
    std::size_t total_degree() const;
    std::size_t degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const;

    const Exponents& leading_monomial() const { return terms_.rbegin()->first; }
    const Rat& leading_coefficient() const { return terms_.rbegin()->second; }

    void add_term(const Exponents& e, const Rat& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Rat& s) const;

    // Scalar multiple with leading coefficient 1 (zero stays zero).
    MPoly monic() const;

    Rat evaluate(std::span<const Rat> point) const;

    // Maps variable i to variable target[i] of a ring with new_nvars variables, or substitutes the
    // constant value[i] when target[i] is empty.
    MPoly remap(std::size_t new_nvars, const std::vector<std::optional<std::size_t>>& target,
                const std::vector<Rat>& value) const;

    friend bool operator==(const MPoly& a, const MPoly& b) = default;

private:
    std::size_t nvars_ = 0;
    Terms terms_;
};

// Exact quotient a / b; throws Error if b does not divide a.
MPoly exact_divide(const MPoly& a, const MPoly& b);
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);

// Monic greatest common divisor (gcd(0, 0) = 0).
MPoly gcd(const MPoly& a, const MPoly& b);
MPoly lcm(const MPoly& a, const MPoly& b);

// Text with variables named by `name` (default "v<i>").
std::string format(const MPoly& p, const std::function<std::string(std::size_t)>& name = {});

}  // namespace ncdomain
