#include "ncdomain/free_series.hpp"

#include <functional>
#include <unordered_map>

#include "ncdomain/errors.hpp"

namespace ncdomain {

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += "x" + std::to_string(w[i] + 1);
    }
    return s;
}

std::vector<Word> words_up_to(std::size_t g, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t level_start = 0;
    for (std::size_t len = 1; len <= max_len && g > 0; ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_start; i < level_end; ++i)
            for (std::size_t j = 0; j < g; ++j) {
                Word w = out[i];
                w.push_back(j);
                out.push_back(std::move(w));
            }
        level_start = level_end;
    }
    return out;
}

FreeSeries FreeSeries::constant(std::size_t g, std::size_t max_deg, const Rat& value) {
    FreeSeries s(g, max_deg);
    s.set({}, value);
    return s;
}

FreeSeries FreeSeries::variable(std::size_t g, std::size_t max_deg, std::size_t index) {
    if (index >= g) throw VariableOutOfRange("variable x" + std::to_string(index + 1) + " out of range");
    FreeSeries s(g, max_deg);
    if (max_deg >= 1) s.set({index}, Rat(1));
    return s;
}

Rat FreeSeries::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rat(0) : it->second;
}

void FreeSeries::set(const Word& w, const Rat& value) {
    if (w.size() > max_deg_) return;
    if (sgn(value) == 0) terms_.erase(w);
    else terms_[w] = value;
}

std::size_t FreeSeries::degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
}

void FreeSeries::check_compatible(const FreeSeries& o) const {
    if (g_ != o.g_ || max_deg_ != o.max_deg_) throw DimensionMismatch("series with different shapes");
}

FreeSeries FreeSeries::operator+(const FreeSeries& o) const {
    check_compatible(o);
    FreeSeries s = *this;
    for (const auto& [w, c] : o.terms_) s.set(w, s.coefficient(w) + c);
    return s;
}

FreeSeries FreeSeries::operator-() const { return scaled(Rat(-1)); }

FreeSeries FreeSeries::operator-(const FreeSeries& o) const { return *this + (-o); }

FreeSeries FreeSeries::operator*(const FreeSeries& o) const {
    check_compatible(o);
    FreeSeries s(g_, max_deg_);
    for (const auto& [u, a] : terms_)
        for (const auto& [v, b] : o.terms_) {
            if (u.size() + v.size() > max_deg_) continue;
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            s.terms_[w] += a * b;
        }
    std::erase_if(s.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    return s;
}

FreeSeries FreeSeries::scaled(const Rat& s) const {
    FreeSeries r(g_, max_deg_);
    if (sgn(s) == 0) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, s * c);
    return r;
}

FreeSeries expand_series(const Expr& e, std::size_t g, std::size_t max_deg) {
    std::unordered_map<const void*, FreeSeries> memo;
    std::function<FreeSeries(const Expr&)> walk = [&](const Expr& node) -> FreeSeries {
        if (auto it = memo.find(node.id()); it != memo.end()) return it->second;
        FreeSeries out(g, max_deg);
        switch (node.kind()) {
            case Expr::Kind::Const: out = FreeSeries::constant(g, max_deg, node.value()); break;
            case Expr::Kind::Var: out = FreeSeries::variable(g, max_deg, node.index()); break;
            case Expr::Kind::Add: out = walk(node.lhs()) + walk(node.rhs()); break;
            case Expr::Kind::Mul: out = walk(node.lhs()) * walk(node.rhs()); break;
            case Expr::Kind::Neg: out = -walk(node.arg()); break;
            case Expr::Kind::Inv: {
                const FreeSeries s = walk(node.arg());
                const Rat gamma = s.coefficient({});
                if (sgn(gamma) == 0)
                    throw NotRegularAtZero("inverse of a series with zero constant term: " + format(node));
                // s = gamma (1 - t) with t proper; s^{-1} = gamma^{-1} sum_k t^k.
                const FreeSeries t = FreeSeries::constant(g, max_deg, Rat(1)) - s.scaled(1 / gamma);
                FreeSeries acc = FreeSeries::constant(g, max_deg, Rat(1));
                FreeSeries power = acc;
                for (std::size_t k = 1; k <= max_deg; ++k) {
                    power = power * t;
                    acc = acc + power;
                }
                out = acc.scaled(1 / gamma);
                break;
            }
        }
        memo.emplace(node.id(), out);
        return out;
    };
    return walk(e);
}

FreeSeries nc_polynomial(const Expr& e, std::size_t g) {
    if (has_inverse(e)) throw Error("expression is not an nc polynomial: " + format(e));
    // Syntactic degree bound.
    std::unordered_map<const void*, std::size_t> memo;
    std::function<std::size_t(const Expr&)> deg = [&](const Expr& node) -> std::size_t {
        if (auto it = memo.find(node.id()); it != memo.end()) return it->second;
        std::size_t d = 0;
        switch (node.kind()) {
            case Expr::Kind::Const: d = 0; break;
            case Expr::Kind::Var: d = 1; break;
            case Expr::Kind::Add: d = std::max(deg(node.lhs()), deg(node.rhs())); break;
            case Expr::Kind::Mul: d = deg(node.lhs()) + deg(node.rhs()); break;
            default: d = deg(node.arg()); break;
        }
        memo.emplace(node.id(), d);
        return d;
    };
    const FreeSeries full = expand_series(e, g, deg(e));
    FreeSeries tight(g, full.degree());
    for (const auto& [w, c] : full.terms()) tight.set(w, c);
    return tight;
}

QMatrix evaluate(const FreeSeries& p, const MatTuple& x) {
    check_tuple(x);
    if (p.g() > x.g()) throw DimensionMismatch("polynomial has more variables than the point");
    QMatrix acc(x.n, x.n);
    for (const auto& [w, c] : p.terms()) {
        QMatrix m = QMatrix::scalar(x.n, c);
        for (std::size_t letter : w) m = m * x[letter];
        acc = acc + m;
    }
    return acc;
}

FreeSeries substitute_letters(const FreeSeries& p, const std::vector<std::size_t>& perm) {
    FreeSeries out(p.g(), p.max_deg());
    for (const auto& [w, c] : p.terms()) {
        Word v;
        for (std::size_t letter : w) v.push_back(perm.at(letter));
        out.set(v, out.coefficient(v) + c);
    }
    return out;
}

}  // namespace ncdomain
