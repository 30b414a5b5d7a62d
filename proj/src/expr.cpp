#include "ncdomain/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>

#include "ncdomain/errors.hpp"

namespace ncdomain {

Expr Expr::constant(const Rat& value) {
    if (sgn(value) < 0) return neg(constant(-value));
    return Expr(std::make_shared<const Node>(Node{Kind::Const, value, 0, nullptr, nullptr}));
}

Expr Expr::variable(std::size_t index) {
    return Expr(std::make_shared<const Node>(Node{Kind::Var, Rat(0), index, nullptr, nullptr}));
}

Expr Expr::add(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Add, Rat(0), 0, std::move(a.node_), std::move(b.node_)}));
}

Expr Expr::mul(Expr a, Expr b) {
    return Expr(std::make_shared<const Node>(Node{Kind::Mul, Rat(0), 0, std::move(a.node_), std::move(b.node_)}));
}

Expr Expr::neg(Expr a) {
    return Expr(std::make_shared<const Node>(Node{Kind::Neg, Rat(0), 0, std::move(a.node_), nullptr}));
}

Expr Expr::inv(Expr a) {
    return Expr(std::make_shared<const Node>(Node{Kind::Inv, Rat(0), 0, std::move(a.node_), nullptr}));
}

namespace {

bool is_binary(Expr::Kind k) { return k == Expr::Kind::Add || k == Expr::Kind::Mul; }
bool is_unary(Expr::Kind k) { return k == Expr::Kind::Neg || k == Expr::Kind::Inv; }

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    std::map<std::pair<const void*, const void*>, bool> memo;
    std::function<bool(const Expr&, const Expr&)> eq = [&](const Expr& x, const Expr& y) -> bool {
        if (x.id() == y.id()) return true;
        if (x.kind() != y.kind()) return false;
        auto key = std::make_pair(x.id(), y.id());
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool result = false;
        switch (x.kind()) {
            case Expr::Kind::Const: result = x.value() == y.value(); break;
            case Expr::Kind::Var: result = x.index() == y.index(); break;
            case Expr::Kind::Add:
            case Expr::Kind::Mul: result = eq(x.lhs(), y.lhs()) && eq(x.rhs(), y.rhs()); break;
            case Expr::Kind::Neg:
            case Expr::Kind::Inv: result = eq(x.arg(), y.arg()); break;
        }
        memo.emplace(key, result);
        return result;
    };
    return eq(a, b);
}

std::size_t variable_count(const Expr& e) {
    std::unordered_map<const void*, std::size_t> memo;
    std::function<std::size_t(const Expr&)> walk = [&](const Expr& x) -> std::size_t {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        std::size_t r = 0;
        if (x.kind() == Expr::Kind::Var) r = x.index() + 1;
        else if (is_binary(x.kind())) r = std::max(walk(x.lhs()), walk(x.rhs()));
        else if (is_unary(x.kind())) r = walk(x.arg());
        memo.emplace(x.id(), r);
        return r;
    };
    return walk(e);
}

std::size_t tree_size(const Expr& e, std::size_t cap) {
    std::unordered_map<const void*, std::size_t> memo;
    auto sat_add = [cap](std::size_t a, std::size_t b) { return (a >= cap - std::min(cap, b)) ? cap : a + b; };
    std::function<std::size_t(const Expr&)> walk = [&](const Expr& x) -> std::size_t {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        std::size_t r = 1;
        if (is_binary(x.kind())) r = sat_add(sat_add(r, walk(x.lhs())), walk(x.rhs()));
        else if (is_unary(x.kind())) r = sat_add(r, walk(x.arg()));
        r = std::min(r, cap);
        memo.emplace(x.id(), r);
        return r;
    };
    return walk(e);
}

std::size_t dag_size(const Expr& e) {
    std::unordered_map<const void*, bool> seen;
    std::function<void(const Expr&)> walk = [&](const Expr& x) {
        if (!seen.emplace(x.id(), true).second) return;
        if (is_binary(x.kind())) {
            walk(x.lhs());
            walk(x.rhs());
        } else if (is_unary(x.kind())) {
            walk(x.arg());
        }
    };
    walk(e);
    return seen.size();
}

bool has_inverse(const Expr& e) {
    std::unordered_map<const void*, bool> memo;
    std::function<bool(const Expr&)> walk = [&](const Expr& x) -> bool {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        bool r = false;
        if (x.kind() == Expr::Kind::Inv) r = true;
        else if (is_binary(x.kind())) r = walk(x.lhs()) || walk(x.rhs());
        else if (x.kind() == Expr::Kind::Neg) r = walk(x.arg());
        memo.emplace(x.id(), r);
        return r;
    };
    return walk(e);
}

// ---------------------------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

    Expr parse_all() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    Expr parse_sum() {
        Expr e = parse_signed();
        for (;;) {
            if (accept("+")) e = Expr::add(e, parse_signed());
            else if (accept("-")) e = Expr::add(e, Expr::neg(parse_signed()));
            else return e;
        }
    }

    Expr parse_signed() {
        if (accept("-")) return Expr::neg(parse_signed());
        return parse_product();
    }

    Expr parse_product() {
        Expr e = parse_postfix();
        while (accept("*")) e = Expr::mul(e, parse_postfix());
        return e;
    }

    Expr parse_postfix() {
        Expr e = parse_primary();
        for (;;) {
            skip_ws();
            if (text_.substr(pos_, 1) != "^") return e;
            ++pos_;
            if (!accept("-") || !accept("1")) fail("only the exponent ^-1 is supported");
            e = Expr::inv(e);
        }
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            std::string literal(digits());
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                auto den = digits();
                if (den.empty()) fail("expected denominator digits");
                literal += "/" + std::string(den);
            }
            try {
                return Expr::constant(parse_rat(literal));
            } catch (const Error& err) {
                pos_ = start;
                fail(err.what());
            }
        }
        if (text_.substr(pos_, 3) == "inv") {
            pos_ += 3;
            expect('(');
            Expr e = parse_sum();
            expect(')');
            return Expr::inv(e);
        }
        if (c == 'x') {
            const std::size_t start = pos_;
            ++pos_;
            auto idx = digits();
            if (idx.empty()) fail("expected variable index after 'x'");
            if (idx.size() > 6) fail("variable index too large");
            const std::size_t index = std::stoul(std::string(idx));
            if (index == 0) {
                pos_ = start;
                fail("variables are numbered from x1");
            }
            if (num_vars_ != 0 && index > num_vars_)
                throw VariableOutOfRange("variable x" + std::to_string(index) + " exceeds the declared count " +
                                         std::to_string(num_vars_));
            return Expr::variable(index - 1);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t num_vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::size_t num_vars) { return Parser(text, num_vars).parse_all(); }

// ---------------------------------------------------------------------------------------------
// Formatting

namespace {

// Binding context an expression is printed into, from loosest to tightest.
enum class Ctx { Sum, Signed, ProductLeft, Postfix };

struct TooLong {};

class Printer {
public:
    explicit Printer(std::size_t max_chars) : max_(max_chars) {}

    void print(const Expr& e, Ctx ctx) {
        const bool parens = needs_parens(e.kind(), ctx);
        if (parens) put("(");
        switch (e.kind()) {
            case Expr::Kind::Const: put(to_string(e.value())); break;
            case Expr::Kind::Var: put("x" + std::to_string(e.index() + 1)); break;
            case Expr::Kind::Add: {
                print(e.lhs(), Ctx::Sum);
                Expr r = e.rhs();
                if (r.kind() == Expr::Kind::Neg) {
                    put(" - ");
                    print(r.arg(), Ctx::Signed);
                } else {
                    put(" + ");
                    print(r, Ctx::Signed);
                }
                break;
            }
            case Expr::Kind::Mul:
                print(e.lhs(), Ctx::ProductLeft);
                put("*");
                print(e.rhs(), Ctx::Postfix);
                break;
            case Expr::Kind::Neg:
                put("-");
                print(e.arg(), Ctx::Signed);
                break;
            case Expr::Kind::Inv:
                print(e.arg(), Ctx::Postfix);
                put("^-1");
                break;
        }
        if (parens) put(")");
    }

    std::string take() { return std::move(out_); }

private:
    static bool needs_parens(Expr::Kind k, Ctx ctx) {
        switch (k) {
            case Expr::Kind::Add: return ctx != Ctx::Sum;
            case Expr::Kind::Neg: return ctx == Ctx::ProductLeft || ctx == Ctx::Postfix;
            case Expr::Kind::Mul: return ctx == Ctx::Postfix;
            default: return false;
        }
    }

    void put(const std::string& s) {
        out_ += s;
        if (out_.size() > max_) throw TooLong{};
    }

    std::size_t max_;
    std::string out_;
};

}  // namespace

std::string format(const Expr& e) {
    Printer p(SIZE_MAX);
    p.print(e, Ctx::Sum);
    return p.take();
}

std::optional<std::string> format_bounded(const Expr& e, std::size_t max_chars) {
    Printer p(max_chars);
    try {
        p.print(e, Ctx::Sum);
    } catch (const TooLong&) {
        return std::nullopt;
    }
    return p.take();
}

// ---------------------------------------------------------------------------------------------
// Evaluation

Evaluator::Evaluator(MatTuple x) : x_(std::move(x)) { check_tuple(x_); }

EvalResult Evaluator::operator()(const Expr& e) {
    if (variable_count(e) > x_.g())
        throw DimensionMismatch("expression uses x" + std::to_string(variable_count(e)) + " but the point has " +
                                std::to_string(x_.g()) + " matrices");
    const Entry& entry = walk(e);
    return EvalResult{entry.value, entry.failed_at};
}

const Evaluator::Entry& Evaluator::walk(const Expr& node) {
    if (auto it = memo_.find(node.id()); it != memo_.end()) return it->second;
    Entry entry{node, std::nullopt, std::nullopt};
    auto propagate = [&](const Entry& child) {
        if (!child.value) entry.failed_at = child.failed_at;
        return child.value.has_value();
    };
    switch (node.kind()) {
        case Expr::Kind::Const: entry.value = QMatrix::scalar(x_.n, node.value()); break;
        case Expr::Kind::Var: entry.value = x_[node.index()]; break;
        case Expr::Kind::Add:
        case Expr::Kind::Mul: {
            const Entry& a = walk(node.lhs());
            if (!propagate(a)) break;
            const Entry& b = walk(node.rhs());
            if (!propagate(b)) break;
            entry.value = node.kind() == Expr::Kind::Add ? *a.value + *b.value : *a.value * *b.value;
            break;
        }
        case Expr::Kind::Neg: {
            const Entry& a = walk(node.arg());
            if (propagate(a)) entry.value = -*a.value;
            break;
        }
        case Expr::Kind::Inv: {
            const Entry& a = walk(node.arg());
            if (!propagate(a)) break;
            entry.value = try_inverse(*a.value);
            if (!entry.value) entry.failed_at = node;
            break;
        }
    }
    return memo_.emplace(node.id(), std::move(entry)).first->second;
}

EvalResult eval(const Expr& e, const MatTuple& x) { return Evaluator(x)(e); }

EvalResult eval_scalar(const Expr& e, std::span<const Rat> point) { return eval(e, MatTuple::scalars(point)); }

Expr shift_vars(const Expr& e, std::span<const Rat> alpha) {
    std::unordered_map<const void*, Expr> memo;
    std::function<Expr(const Expr&)> walk = [&](const Expr& node) -> Expr {
        if (auto it = memo.find(node.id()); it != memo.end()) return it->second;
        Expr out = node;
        switch (node.kind()) {
            case Expr::Kind::Const: break;
            case Expr::Kind::Var:
                if (node.index() >= alpha.size())
                    throw DimensionMismatch("shift vector shorter than the variable index x" +
                                            std::to_string(node.index() + 1));
                if (sgn(alpha[node.index()]) != 0) out = Expr::add(node, Expr::constant(alpha[node.index()]));
                break;
            case Expr::Kind::Add: out = Expr::add(walk(node.lhs()), walk(node.rhs())); break;
            case Expr::Kind::Mul: out = Expr::mul(walk(node.lhs()), walk(node.rhs())); break;
            case Expr::Kind::Neg: out = Expr::neg(walk(node.arg())); break;
            case Expr::Kind::Inv: out = Expr::inv(walk(node.arg())); break;
        }
        memo.emplace(node.id(), out);
        return out;
    };
    return walk(e);
}

}  // namespace ncdomain
