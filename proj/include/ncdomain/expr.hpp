#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncdomain/matrix.hpp"
#include "ncdomain/rational.hpp"

namespace ncdomain {

/// Immutable syntax tree of a noncommutative rational expression.
///
/// Nodes are shared, so an Expr is a DAG; every traversal in this library memoizes on node
/// identity. Variables are 0-based internally and print as x1, x2, ...
///
/// Const nodes always hold a nonnegative value: Expr::constant(-q) yields Neg(Const q), which is
/// what the parser produces for "-q", so parse(format(e)) reproduces e exactly.
class Expr {
public:
    enum class Kind { Const, Var, Add, Mul, Neg, Inv };

    static Expr constant(const Rat& value);
    static Expr variable(std::size_t index);
    static Expr add(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr neg(Expr a);
    static Expr inv(Expr a);

    Kind kind() const { return node_->kind; }
    const Rat& value() const { return node_->value; }
    std::size_t index() const { return node_->index; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }
    // Operand of Neg and Inv.
    Expr arg() const { return Expr(node_->lhs); }

    const void* id() const { return node_.get(); }

    bool is_const(const Rat& v) const { return kind() == Kind::Const && value() == v; }

private:
    struct Node {
        Kind kind;
        Rat value;
        std::size_t index = 0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr a, Expr b) { return Expr::add(std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::mul(std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::neg(std::move(a)); }
inline Expr operator-(Expr a, Expr b) { return Expr::add(std::move(a), Expr::neg(std::move(b))); }

// Exact structural equality (same tree shape, same constants and variables).
bool structurally_equal(const Expr& a, const Expr& b);

// One more than the largest variable index used, 0 for variable-free expressions.
std::size_t variable_count(const Expr& e);

// Node count of the expression viewed as a tree (shared nodes counted per occurrence),
// saturating at `cap`.
std::size_t tree_size(const Expr& e, std::size_t cap = SIZE_MAX);
// Number of distinct nodes.
std::size_t dag_size(const Expr& e);

bool has_inverse(const Expr& e);

/// Grammar:
///   sum     := signed (('+' | '-') signed)*
///   signed  := '-' signed | product
///   product := postfix ('*' postfix)*
///   postfix := primary ('^-1')*
///   primary := rational | 'x' digits | '(' sum ')' | 'inv' '(' sum ')'
///   rational:= digits ('/' digits)?
/// "a - b" parses as Add(a, Neg(b)). Variables are written 1-based and must satisfy
/// index <= num_vars; pass num_vars = 0 to accept any index.
Expr parse(std::string_view text, std::size_t num_vars = 0);

// Canonical text; parse(format(e)) is structurally equal to e.
std::string format(const Expr& e);
// As format, but gives up (nullopt) once the output would exceed max_chars.
std::optional<std::string> format_bounded(const Expr& e, std::size_t max_chars);

// Outcome of evaluating an expression at a matrix point.
struct EvalResult {
    std::optional<QMatrix> value;
    // When undefined: the innermost Inv node whose argument evaluated to a singular matrix.
    std::optional<Expr> undefined_at;

    bool defined() const { return value.has_value(); }
};

// Evaluates many expressions at one point, sharing values of common subexpressions across
// calls. Keeps every evaluated node alive for its own lifetime.
class Evaluator {
public:
    explicit Evaluator(MatTuple x);

    // Const(a) evaluates to a*I_n. Requires variable_count(e) <= point().g().
    EvalResult operator()(const Expr& e);
    const MatTuple& point() const { return x_; }

private:
    struct Entry {
        Expr node;
        std::optional<QMatrix> value;
        std::optional<Expr> failed_at;
    };
    const Entry& walk(const Expr& e);

    MatTuple x_;
    std::unordered_map<const void*, Entry> memo_;
};

EvalResult eval(const Expr& e, const MatTuple& x);
EvalResult eval_scalar(const Expr& e, std::span<const Rat> point);

// Replaces every variable x_j by (x_j + alpha_j); variables with alpha_j = 0 are left as they are.
Expr shift_vars(const Expr& e, std::span<const Rat> alpha);

}  // namespace ncdomain
