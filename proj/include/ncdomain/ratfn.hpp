#pragma once

#include <span>

#include "ncdomain/mpoly.hpp"

namespace ncdomain {

// Commutative rational function num/den in lowest terms with a monic denominator.
class MRatFn {
public:
    MRatFn() = default;
    explicit MRatFn(MPoly num);
    MRatFn(MPoly num, MPoly den);

    static MRatFn constant(std::size_t nvars, const Rat& value);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }

    MRatFn operator+(const MRatFn& o) const;
    MRatFn operator-(const MRatFn& o) const;
    MRatFn operator-() const;
    MRatFn operator*(const MRatFn& o) const;
    // Throws Error on the zero function.
    MRatFn inverse() const;

    // Throws Error where the denominator vanishes.
    Rat evaluate(std::span<const Rat> point) const;

    friend bool operator==(const MRatFn&, const MRatFn&) = default;

private:
    void normalize();

    MPoly num_;
    MPoly den_;
};

}  // namespace ncdomain
