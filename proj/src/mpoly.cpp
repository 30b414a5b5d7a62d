#include "ncdomain/mpoly.hpp"

#include <algorithm>
#include <numeric>

#include "ncdomain/errors.hpp"

namespace ncdomain {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    return a < b;
}

MPoly MPoly::constant(std::size_t nvars, const Rat& value) {
    MPoly p(nvars);
    p.add_term(Exponents(nvars, 0), value);
    return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw VariableOutOfRange("polynomial variable out of range");
    MPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, Rat(1));
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

std::size_t MPoly::total_degree() const {
    if (terms_.empty()) return 0;
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

std::size_t MPoly::degree_in(std::size_t var) const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[var]);
    return d;
}

bool MPoly::depends_on(std::size_t var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] != 0) return true;
    return false;
}

void MPoly::add_term(const Exponents& e, const Rat& c) {
    if (e.size() != nvars_) throw DimensionMismatch("monomial has the wrong number of variables");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomials over different variable sets");
    MPoly s = *this;
    for (const auto& [e, c] : o.terms_) s.add_term(e, c);
    return s;
}

MPoly MPoly::operator-() const { return scaled(Rat(-1)); }

MPoly MPoly::operator-(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomials over different variable sets");
    MPoly s = *this;
    for (const auto& [e, c] : o.terms_) s.add_term(e, -c);
    return s;
}

MPoly MPoly::operator*(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomials over different variable sets");
    MPoly p(nvars_);
    Exponents e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

MPoly MPoly::scaled(const Rat& s) const {
    MPoly p(nvars_);
    if (sgn(s) == 0) return p;
    for (const auto& [e, c] : terms_) p.terms_.emplace_hint(p.terms_.end(), e, s * c);
    return p;
}

MPoly MPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(1 / leading_coefficient());
}

Rat MPoly::evaluate(std::span<const Rat> point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluation point has the wrong number of variables");
    Rat total = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < nvars_ && sgn(t) != 0; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

MPoly MPoly::remap(std::size_t new_nvars, const std::vector<std::optional<std::size_t>>& target,
                   const std::vector<Rat>& value) const {
    if (target.size() != nvars_ || value.size() != nvars_) throw DimensionMismatch("remap tables have the wrong size");
    MPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponents ne(new_nvars, 0);
        Rat coeff = c;
        for (std::size_t i = 0; i < nvars_ && sgn(coeff) != 0; ++i) {
            if (e[i] == 0) continue;
            if (target[i]) ne[*target[i]] += e[i];
            else
                for (std::uint32_t k = 0; k < e[i]; ++k) coeff *= value[i];
        }
        out.add_term(ne, coeff);
    }
    return out;
}

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomials over different variable sets");
    const std::size_t n = a.nvars();
    MPoly q(n);
    MPoly r = a;
    const Exponents& lb = b.leading_monomial();
    const Rat inv_lcb = 1 / b.leading_coefficient();
    Exponents t(n);
    while (!r.is_zero()) {
        const Exponents& lr = r.leading_monomial();
        for (std::size_t i = 0; i < n; ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            t[i] = lr[i] - lb[i];
        }
        const Rat coeff = r.leading_coefficient() * inv_lcb;
        q.add_term(t, coeff);
        Exponents e(n);
        for (const auto& [eb, cb] : b.terms()) {
            for (std::size_t i = 0; i < n; ++i) e[i] = eb[i] + t[i];
            r.add_term(e, -coeff * cb);
        }
    }
    return q;
}

MPoly exact_divide(const MPoly& a, const MPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw Error("polynomial division is not exact");
    return *std::move(q);
}

// ---------------------------------------------------------------------------------------------
// gcd: recursive content / primitive-part decomposition in the lowest-index variable with a
// subresultant remainder sequence over the coefficient ring.

namespace {

// Coefficients (in the remaining variables) of increasing powers of the main variable.
using Univariate = std::vector<MPoly>;

Univariate split(const MPoly& p, std::size_t var) {
    Univariate u(p.degree_in(var) + 1, MPoly(p.nvars()));
    for (const auto& [e, c] : p.terms()) {
        Exponents rest = e;
        rest[var] = 0;
        u[e[var]].add_term(rest, c);
    }
    return u;
}

MPoly join(const Univariate& u, std::size_t var, std::size_t nvars) {
    MPoly p(nvars);
    for (std::size_t k = 0; k < u.size(); ++k)
        for (const auto& [e, c] : u[k].terms()) {
            Exponents full = e;
            full[var] = static_cast<std::uint32_t>(k);
            p.add_term(full, c);
        }
    return p;
}

void trim(Univariate& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

MPoly content(const Univariate& u) {
    MPoly g(u.front().nvars());
    for (const auto& c : u) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Univariate divide_coefficients(const Univariate& u, const MPoly& d) {
    Univariate out;
    out.reserve(u.size());
    for (const auto& c : u) out.push_back(c.is_zero() ? c : exact_divide(c, d));
    return out;
}

MPoly power(const MPoly& p, std::size_t k) {
    MPoly r = MPoly::constant(p.nvars(), Rat(1));
    for (std::size_t i = 0; i < k; ++i) r = r * p;
    return r;
}

Univariate pseudo_remainder(const Univariate& a, const Univariate& b) {
    Univariate r = a;
    const std::size_t db = b.size() - 1;
    const MPoly& lcb = b.back();
    std::size_t e = a.size() - b.size() + 1;
    while (!r.empty() && r.size() - 1 >= db) {
        const MPoly lead = r.back();
        const std::size_t shift = r.size() - 1 - db;
        for (auto& c : r) c = c * lcb;
        for (std::size_t k = 0; k <= db; ++k) r[k + shift] = r[k + shift] - lead * b[k];
        trim(r);
        --e;
    }
    if (e > 0 && !r.empty()) {
        const MPoly f = power(lcb, e);
        for (auto& c : r) c = c * f;
    }
    return r;
}

// gcd of two primitive univariate polynomials of positive degree, returned primitive.
Univariate subresultant_gcd(Univariate a, Univariate b) {
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t nvars = a.front().nvars();
    MPoly g = MPoly::constant(nvars, Rat(1));
    MPoly h = g;
    for (;;) {
        const std::size_t delta = a.size() - b.size();
        Univariate r = pseudo_remainder(a, b);
        if (r.empty()) break;
        if (r.size() == 1) return Univariate{MPoly::constant(nvars, Rat(1))};
        a = std::move(b);
        b = divide_coefficients(r, g * power(h, delta));
        g = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_divide(power(g, delta), power(h, delta - 1));
        }
    }
    return divide_coefficients(b, content(b));
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.nvars() != b.nvars()) throw DimensionMismatch("polynomials over different variable sets");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const std::size_t n = a.nvars();
    if (a.is_constant() || b.is_constant()) return MPoly::constant(n, Rat(1));
    if (a.term_count() <= b.term_count()) {
        if (try_divide(b, a)) return a.monic();
    } else if (try_divide(a, b)) {
        return b.monic();
    }

    std::size_t var = 0;
    while (var < n && !a.depends_on(var) && !b.depends_on(var)) ++var;
    if (!a.depends_on(var)) return gcd(a, content(split(b, var)));
    if (!b.depends_on(var)) return gcd(content(split(a, var)), b);

    const Univariate ua = split(a, var);
    const Univariate ub = split(b, var);
    const MPoly ca = content(ua);
    const MPoly cb = content(ub);
    const MPoly c = gcd(ca, cb);
    const Univariate g = subresultant_gcd(divide_coefficients(ua, ca), divide_coefficients(ub, cb));
    return (c * join(g, var, n)).monic();
}

MPoly lcm(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly(a.nvars());
    return exact_divide(a * b, gcd(a, b)).monic();
}

std::string format(const MPoly& p, const std::function<std::string(std::size_t)>& name) {
    if (p.is_zero()) return "0";
    auto var_name = [&](std::size_t i) { return name ? name(i) : "v" + std::to_string(i); };
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rat mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) out += to_string(mag);
        else if (mag == 1) out += mono;
        else out += to_string(mag) + "*" + mono;
    }
    return out;
}

}  // namespace ncdomain
