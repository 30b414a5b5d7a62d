#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncdomain {

// Arbitrary-precision rational; GMP keeps every result in lowest terms with a positive denominator.
using Rat = mpq_class;
using BigInt = mpz_class;

// Parses "p" or "p/q" (optional leading '-'); throws Error on malformed text or zero denominator.
Rat parse_rat(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& q);

// p/q in lowest terms.
inline Rat rat(long p, long q = 1) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

}  // namespace ncdomain
