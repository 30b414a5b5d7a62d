#include "ncdomain/domain.hpp"

#include "ncdomain/errors.hpp"

namespace ncdomain {

std::optional<std::vector<Rat>> find_scalar_point(const Expr& e, std::size_t g, const SamplingOptions& opts) {
    if (variable_count(e) > g) throw VariableOutOfRange("expression uses more than g variables");
    return search_scalar_point([&](std::span<const Rat> p) { return eval_scalar(e, p).defined(); }, g, opts);
}

PencilDomain::PencilDomain(const Expr& e, std::span<const Rat> alpha, std::size_t g)
    : realization_(build(e, alpha, g)) {}

PencilDomain::PencilDomain(const Realization& r) : realization_(minimize(r)) {}

Rat PencilDomain::pencil_det(const MatTuple& x) const { return det(pencil_at(realization_, x)); }

bool PencilDomain::contains(const MatTuple& x) const { return sgn(pencil_det(x)) != 0; }

MPoly scalar_pencil_det(const PencilDomain& pd) {
    const Realization& r = pd.realization();
    const std::size_t d = r.size();
    const std::size_t g = r.g;
    std::vector<MPoly> a;
    a.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            MPoly e = MPoly::constant(g, i == j ? Rat(1) : Rat(0));
            for (std::size_t v = 0; v < g; ++v) {
                const Rat& coeff = r.A[v](i, j);
                if (sgn(coeff) == 0) continue;
                e = e - (MPoly::variable(g, v) - MPoly::constant(g, r.base_point[v])).scaled(coeff);
            }
            a.push_back(std::move(e));
        }
    auto at = [&](std::size_t i, std::size_t j) -> MPoly& { return a[i * d + j]; };

    // Fraction-free (Bareiss) elimination; every division is exact.
    MPoly previous = MPoly::constant(g, Rat(1));
    bool negate = false;
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t pivot = k;
        while (pivot < d && at(pivot, k).is_zero()) ++pivot;
        if (pivot == d) return MPoly(g);
        if (pivot != k) {
            for (std::size_t j = 0; j < d; ++j) std::swap(at(pivot, j), at(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < d; ++i) {
            for (std::size_t j = k + 1; j < d; ++j)
                at(i, j) = exact_divide(at(k, k) * at(i, j) - at(i, k) * at(k, j), previous);
            at(i, k) = MPoly(g);
        }
        previous = at(k, k);
    }
    MPoly result = d == 0 ? MPoly::constant(g, Rat(1)) : at(d - 1, d - 1);
    return negate ? -result : result;
}

std::vector<Check> shift_domain_inclusion_check(const PencilDomain& pd, std::size_t j,
                                                const std::vector<MatTuple>& samples) {
    for (const auto& a : pd.base_point())
        if (sgn(a) != 0) throw Error("shift inclusion check expects a realization about 0");
    const PencilDomain shifted(left_shift(pd.realization(), j));
    std::vector<Check> report;
    std::size_t tested = 0;
    std::size_t violations = 0;
    std::string first_violation;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!pd.contains(samples[i])) continue;
        ++tested;
        if (!shifted.contains(samples[i])) {
            if (violations++ == 0) first_violation = "sample " + std::to_string(i);
        }
    }
    report.push_back({"left-shift-domain-inclusion", violations == 0,
                      std::to_string(tested) + " samples in the domain, " + std::to_string(violations) +
                          " outside the shifted domain" + (violations ? " (first: " + first_violation + ")" : "")});
    return report;
}

}  // namespace ncdomain
