#include "ncdomain/ratfn.hpp"

#include "ncdomain/errors.hpp"

namespace ncdomain {

MRatFn::MRatFn(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.nvars(), Rat(1))) {}

MRatFn::MRatFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("rational function with zero denominator");
    normalize();
}

MRatFn MRatFn::constant(std::size_t nvars, const Rat& value) { return MRatFn(MPoly::constant(nvars, value)); }

void MRatFn::normalize() {
    if (num_.is_zero()) {
        den_ = MPoly::constant(num_.nvars(), Rat(1));
        return;
    }
    if (!den_.is_constant()) {
        const MPoly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
    }
    const Rat lc = den_.leading_coefficient();
    if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
}

MRatFn MRatFn::operator+(const MRatFn& o) const {
    if (den_ == o.den_) return MRatFn(num_ + o.num_, den_);
    if (den_.is_constant() && o.den_.is_constant()) return MRatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    // a/b + c/d = (a (d/g) + c (b/g)) / (b d / g) with g = gcd(b, d).
    const MPoly g = gcd(den_, o.den_);
    const MPoly bg = exact_divide(den_, g);
    const MPoly dg = exact_divide(o.den_, g);
    return MRatFn(num_ * dg + o.num_ * bg, bg * o.den_);
}

MRatFn MRatFn::operator-() const {
    MRatFn r = *this;
    r.num_ = -num_;
    return r;
}

MRatFn MRatFn::operator-(const MRatFn& o) const { return *this + (-o); }

MRatFn MRatFn::operator*(const MRatFn& o) const {
    if (num_.is_zero() || o.num_.is_zero()) return MRatFn(MPoly(nvars()));
    // Cross-cancel before multiplying to keep the final gcd small.
    const MPoly g1 = den_.is_constant() || o.num_.is_constant() ? MPoly::constant(nvars(), Rat(1)) : gcd(o.num_, den_);
    const MPoly g2 = o.den_.is_constant() || num_.is_constant() ? MPoly::constant(nvars(), Rat(1)) : gcd(num_, o.den_);
    MRatFn r;
    r.num_ = exact_divide(num_, g2) * exact_divide(o.num_, g1);
    r.den_ = exact_divide(den_, g1) * exact_divide(o.den_, g2);
    const Rat lc = r.den_.leading_coefficient();
    if (lc != 1) {
        r.num_ = r.num_.scaled(1 / lc);
        r.den_ = r.den_.scaled(1 / lc);
    }
    return r;
}

MRatFn MRatFn::inverse() const {
    if (num_.is_zero()) throw Error("inverse of the zero rational function");
    return MRatFn(den_, num_);
}

Rat MRatFn::evaluate(std::span<const Rat> point) const {
    const Rat d = den_.evaluate(point);
    if (sgn(d) == 0) throw Error("rational function evaluated on its pole set");
    return num_.evaluate(point) / d;
}

}  // namespace ncdomain
