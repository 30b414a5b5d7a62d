#include "ncdomain/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "ncdomain/counterexample.hpp"
#include "ncdomain/domain.hpp"
#include "ncdomain/errors.hpp"
#include "ncdomain/expr.hpp"
#include "ncdomain/free_series.hpp"
#include "ncdomain/generic.hpp"
#include "ncdomain/json_io.hpp"
#include "ncdomain/realization.hpp"

namespace ncdomain::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};
struct Negative : Error {
    using Error::Error;
};

struct Options {
    std::string expr;
    std::string expr_file;
    std::string other;
    std::string point;
    std::string at;
    std::uint64_t seed = 0;
    std::size_t max_symbolic_vars = SymbolicLimits{}.max_vars;
    std::size_t max_degree = SymbolicLimits{}.max_degree;
    bool json = false;
    std::size_t order = 4;
    std::size_t var = 0;
    std::string side = "left";
    std::size_t copies = 1;
    std::size_t size = 1;
    std::size_t max_chars = 200000;
    std::string save;
    std::string demo;
};

// Ordered key/value output: "key: value" lines, or one JSON object with --json.
class Report {
public:
    void add(const std::string& key, Json value) { data_[key] = std::move(value); }
    const Json& data() const { return data_; }

    void print(std::ostream& out, bool json) const {
        if (json) {
            out << data_.dump(2) << "\n";
            return;
        }
        for (const auto& [key, value] : data_.items())
            out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }

private:
    Json data_ = Json::object();
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string names(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string format_scalar_poly(const MPoly& p) { return format(p, names); }

Expr load_expr(const Options& o) {
    if (o.expr.empty() == o.expr_file.empty()) throw UsageError("give exactly one of --expr and --expr-file");
    return parse(o.expr.empty() ? read_file(o.expr_file) : o.expr);
}

MatTuple load_point(const Options& o) {
    if (o.point.empty()) throw UsageError("--point is required");
    const std::string text = o.point.front() == '{' ? o.point : read_file(o.point);
    try {
        return tuple_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed point JSON: ") + e.what());
    }
}

std::vector<Rat> parse_at(const std::string& text) {
    std::vector<Rat> alpha;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        try {
            alpha.push_back(parse_rat(item));
        } catch (const Error&) {
            throw UsageError("--at expects comma-separated rationals, got \"" + item + "\"");
        }
    }
    return alpha;
}

// g from the point (if any), the --at override (if any) and the expression.
std::size_t variable_total(const Expr& e, const Options& o, const std::optional<MatTuple>& x) {
    std::size_t g = variable_count(e);
    if (x) {
        if (g > x->g())
            throw UsageError("expression uses x" + std::to_string(g) + " but the point has " +
                             std::to_string(x->g()) + " matrices");
        g = x->g();
    }
    if (!o.at.empty()) {
        const std::size_t k = parse_at(o.at).size();
        if (x && k != g) throw UsageError("--at has " + std::to_string(k) + " entries for " + std::to_string(g) + " variables");
        if (k < g) throw UsageError("--at needs " + std::to_string(g) + " entries");
        g = k;
    }
    return g;
}

std::vector<Rat> choose_base_point(const Expr& e, std::size_t g, const Options& o) {
    if (!o.at.empty()) return parse_at(o.at);
    auto alpha = find_scalar_point(e, g, SamplingOptions{o.seed});
    if (!alpha) throw Negative("no scalar point found where the expression is defined; domain membership is unknown");
    return *alpha;
}

Json rats_to_json(std::span<const Rat> v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}

SymbolicLimits limits(const Options& o) { return SymbolicLimits{o.max_symbolic_vars, o.max_degree}; }

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ---------------------------------------------------------------------------------------------

int cmd_parse(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    r.add("expr", format(e));
    r.add("variables", variable_count(e));
    r.add("tree_size", tree_size(e));
    r.add("dag_size", dag_size(e));
    return kSuccess;
}

int cmd_eval(const Options& o, Report& r, std::ostream& err) {
    const Expr e = load_expr(o);
    const MatTuple x = load_point(o);
    variable_total(e, o, x);
    const EvalResult res = eval(e, x);
    r.add("defined", res.defined());
    if (res.defined()) {
        r.add("value", to_json(*res.value));
        return kSuccess;
    }
    const std::string where = format_bounded(*res.undefined_at, 2000).value_or("(large subexpression)");
    r.add("undefined_at", where);
    err << "undefined at subexpression " << where << "\n";
    return kNegative;
}

int cmd_realize(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const std::size_t g = variable_total(e, o, std::nullopt);
    const auto alpha = choose_base_point(e, g, o);
    const Realization real = build(e, alpha, g);
    r.add("alpha", rats_to_json(alpha));
    r.add("size", real.size());
    r.add("realization", to_json(real));
    return kSuccess;
}

int cmd_series(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const std::size_t g = variable_total(e, o, std::nullopt);
    const std::vector<Rat> alpha = o.at.empty() ? std::vector<Rat>(g, Rat(0)) : parse_at(o.at);
    const FreeSeries s = expand_series(shift_vars(e, alpha), g, o.order);
    r.add("alpha", rats_to_json(alpha));
    r.add("order", o.order);
    r.add("terms", to_json(s));
    return kSuccess;
}

int cmd_shift(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const std::size_t g = variable_total(e, o, std::nullopt);
    if (o.var < 1 || o.var > std::max<std::size_t>(g, 1))
        throw UsageError("--var must lie between 1 and " + std::to_string(g));
    const std::size_t total = std::max(g, o.var);
    const auto alpha = choose_base_point(e, total, o);
    const Realization base = build(e, alpha, total);
    const Realization shifted = o.side == "left" ? left_shift(base, o.var - 1) : right_shift(base, o.var - 1);
    r.add("alpha", rats_to_json(alpha));
    r.add("side", o.side);
    r.add("variable", names(o.var - 1));
    r.add("size", shifted.size());
    r.add("realization", to_json(shifted));
    r.add("terms", to_json(series(shifted, o.order)));
    return kSuccess;
}

int cmd_equal(const Options& o, Report& r) {
    const Expr e1 = load_expr(o);
    if (o.other.empty()) throw UsageError("--other is required");
    const Expr e2 = parse(o.other);
    const std::size_t g = std::max(variable_count(e1), variable_count(e2));
    const EqualityVerdict v = equal(e1, e2, g, SamplingOptions{o.seed});
    switch (v.kind) {
        case EqualityVerdict::Kind::Equal:
            r.add("verdict", "equal");
            r.add("alpha", rats_to_json(v.point));
            return kSuccess;
        case EqualityVerdict::Kind::Unequal:
            r.add("verdict", "unequal");
            r.add("alpha", rats_to_json(v.point));
            r.add("word", format_word(*v.word));
            r.add("difference", to_json(v.difference));
            return kNegative;
        case EqualityVerdict::Kind::Unknown: break;
    }
    r.add("verdict", "unknown");
    return kNegative;
}

int cmd_domain(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const MatTuple x = load_point(o);
    const std::size_t g = variable_total(e, o, x);
    const auto alpha = choose_base_point(e, g, o);
    const PencilDomain pd(e, alpha, g);
    const bool inside = pd.contains(x);
    r.add("in-domain", inside);
    r.add("alpha", rats_to_json(alpha));
    r.add("pencil_size", pd.size());
    r.add("pencil_det", to_json(pd.pencil_det(x)));
    r.add("expression_defined", eval(e, x).defined());
    return inside ? kSuccess : kNegative;
}

int cmd_witness(const Options& o, Report& r, std::ostream& err) {
    const Expr e = load_expr(o);
    const MatTuple x = load_point(o);
    const std::size_t g = variable_total(e, o, x);
    const auto alpha = choose_base_point(e, g, o);
    const PencilDomain pd(e, alpha, g);
    r.add("alpha", rats_to_json(alpha));
    r.add("pencil_size", pd.size());
    if (!pd.contains(x)) {
        r.add("in-domain", false);
        err << "point is outside the domain; no witness exists\n";
        return kNegative;
    }
    r.add("in-domain", true);
    const Expr w = witness(pd, x);
    const EvalResult value = eval(w, x);
    const auto expected = evaluate(pd.realization(), x);
    r.add("witness_dag_size", dag_size(w));
    r.add("witness_defined", value.defined());
    r.add("matches_realization", value.defined() && expected && *value.value == *expected);
    if (value.defined()) r.add("value", to_json(*value.value));
    const auto text = format_bounded(w, o.max_chars);
    if (!text) {
        err << "witness text exceeds " << o.max_chars << " characters (raise --max-chars)\n";
        return kResourceLimit;
    }
    r.add("witness", *text);
    return kSuccess;
}

int cmd_edom(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const MatTuple x = load_point(o);
    const std::size_t g = variable_total(e, o, x);
    if (o.copies > 1) {
        Json rows = Json::array();
        for (const auto& row : ampliation_probe(e, x, o.copies, limits(o)))
            rows.push_back(Json{{"copies", row.copies}, {"member", row.member}});
        r.add("ampliations", std::move(rows));
        return kSuccess;
    }
    r.add("n", x.n);
    try {
        const GenericEvaluation ge = generic_eval(e, g, x.n, limits(o));
        const bool member = edom_member(ge, x);
        r.add("member", member);
        r.add("denominator", format(ge.denom_lcm, [&](std::size_t v) { return ge.layout.name(v); }));
        r.add("denominator_terms", to_json(ge.denom_lcm));
        return member ? kSuccess : kNegative;
    } catch (const DegenerateAtSize& ex) {
        r.add("member", false);
        r.add("reason", ex.what());
        return kNegative;
    }
}

int cmd_factor(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    const std::size_t g = variable_count(e);
    if (o.size == 0) throw UsageError("--size must be positive");
    const DirectSumFactors f = direct_sum_factorization(e, g, o.size, limits(o));
    auto name = [&](std::size_t v) { return f.layout.name(v); };
    const std::size_t m = f.layout.nvars();
    std::vector<std::optional<std::size_t>> first(m), second(m);
    for (std::size_t i = 0; i < m; ++i) {
        first[i] = i;
        second[i] = m + i;
    }
    const MPoly lifted = f.p1.remap(2 * m, first, std::vector<Rat>(m)) * f.p2.remap(2 * m, second, std::vector<Rat>(m));
    r.add("n", o.size);
    r.add("p1", format(f.p1, name));
    r.add("p2", format(f.p2, name));
    r.add("product_matches", lifted == f.block_diagonal);
    r.add("p1_terms", to_json(f.p1));
    r.add("p2_terms", to_json(f.p2));
    return kSuccess;
}

Json counterexample_json(const CounterexampleData& cd, const std::vector<Check>& checks) {
    Json basis = Json::array();
    for (const auto& w : cd.basis) basis.push_back(format_word(w));
    Json perm = Json::array();
    for (auto p : cd.permutation) perm.push_back(names(p));
    return Json{{"d", cd.d},
                {"M", cd.M},
                {"N", cd.N},
                {"size", cd.size()},
                {"relabeling", std::move(perm)},
                {"u0", format_word(cd.u0)},
                {"basis", std::move(basis)},
                {"checks", to_json(checks)}};
}

int cmd_construct(const Options& o, Report& r) {
    const Expr e = load_expr(o);
    if (variable_count(e) > 4) throw UsageError("the construction needs a polynomial in x1..x4");
    const FreeSeries f = nc_polynomial(e, 4);
    const CounterexampleData cd = build_counterexample(f);
    const auto checks = verify_counterexample(cd);
    const Json summary = counterexample_json(cd, checks);
    for (const auto& [key, value] : summary.items()) r.add(key, value);
    if (!o.save.empty()) {
        std::ofstream out(o.save);
        if (!out) throw UsageError("cannot write " + o.save);
        out << to_json(cd.X).dump(2) << "\n";
        r.add("saved", o.save);
    }
    return all_pass(checks) ? kSuccess : kNegative;
}

// ---------------------------------------------------------------------------------------------

int demo_example_21(Report& r) {
    const Expr e = parse("(1 - x1)*x2*(1 - x1)^-1");
    const std::vector<Rat> alpha = find_scalar_point(e, 2).value();
    const PencilDomain pd(e, alpha, 2);
    r.add("expr", format(e));
    r.add("alpha", rats_to_json(alpha));
    r.add("minimal_size", pd.size());
    r.add("realization", to_json(pd.realization()));
    const MPoly det1 = scalar_pencil_det(pd);
    r.add("scalar_pencil_det", format_scalar_poly(det1));
    r.add("D1", "{(x1, x2) : " + format_scalar_poly(det1) + " != 0}");

    const GenericEvaluation ge1 = generic_eval(e, 2, 1);
    r.add("r[1]", format(ge1.entries[0].num(), [&](std::size_t v) { return ge1.layout.name(v); }));
    r.add("edom1_denominator", format(ge1.denom_lcm, [&](std::size_t v) { return ge1.layout.name(v); }));
    r.add("edom1", ge1.denom_lcm.is_constant() ? "all of Q^2" : "proper subset");

    const MatTuple p{2, {QMatrix{{1, 0}, {0, 0}}, QMatrix{{1, 0}, {0, 0}}}};
    const GenericEvaluation ge2 = generic_eval(e, 2, 2);
    r.add("(1+0,1+0) in edom2", edom_member(ge2, p));
    r.add("(1+0,1+0) in pencil domain", pd.contains(p));
    r.add("(1,1) in pencil domain", pd.contains(MatTuple::scalars(std::vector<Rat>{1, 1})));

    const Realization shifted = left_shift(pd.realization(), 1);
    const Realization target = build(parse("(1 - x1)^-1"), alpha, 2);
    r.add("left shift by x2: size", shifted.size());
    r.add("left shift by x2 similar to (1 - x1)^-1", similar(shifted, target).has_value());
    return kSuccess;
}

int demo_example_310(Report& r) {
    const Expr e = parse("inv(x4 - x3*inv(x1)*x2)");
    const std::vector<Rat> alpha = find_scalar_point(e, 4).value();
    const PencilDomain pd(e, alpha, 4);
    r.add("expr", format(e));
    r.add("alpha", rats_to_json(alpha));
    r.add("minimal_size", pd.size());
    r.add("realization", to_json(pd.realization()));
    r.add("scalar_pencil_det", format_scalar_poly(scalar_pencil_det(pd)));

    bool ok = true;
    for (const char* poly : {"x1", "x1*x2"}) {
        const CounterexampleData cd = build_counterexample(nc_polynomial(parse(poly), 4));
        const auto checks = verify_counterexample(cd);
        ok = ok && all_pass(checks);
        Json entry = counterexample_json(cd, checks);
        entry.erase("basis");
        entry["expression_defined"] = eval(e, cd.X).defined();
        const Expr w = witness(pd, cd.X);
        const EvalResult value = eval(w, cd.X);
        entry["witness_dag_size"] = dag_size(w);
        entry["witness_defined"] = value.defined();
        entry["witness_matches_realization"] = value.defined() && *value.value == *evaluate(pd.realization(), cd.X);
        r.add(std::string("f = ") + poly, std::move(entry));
    }
    return ok ? kSuccess : kNegative;
}

int demo_lemma_32(Report& r) {
    bool ok = true;
    for (const char* text : {"(1 - x1)*x2*(1 - x1)^-1", "x1^-1"}) {
        const Expr e = parse(text);
        const DirectSumFactors f = direct_sum_factorization(e, variable_count(e), 1);
        auto name = [&](std::size_t v) { return f.layout.name(v); };
        const std::size_t m = f.layout.nvars();
        std::vector<std::optional<std::size_t>> first(m), second(m);
        for (std::size_t i = 0; i < m; ++i) {
            first[i] = i;
            second[i] = m + i;
        }
        const bool matches = f.p1.remap(2 * m, first, std::vector<Rat>(m)) *
                                 f.p2.remap(2 * m, second, std::vector<Rat>(m)) ==
                             f.block_diagonal;
        ok = ok && matches;
        r.add(text, Json{{"p1", format(f.p1, name)}, {"p2", format(f.p2, name)}, {"product_matches", matches}});
    }
    return ok ? kSuccess : kNegative;
}

int cmd_demo(const Options& o, Report& r) {
    r.add("demo", o.demo);
    if (o.demo == "example-2.1") return demo_example_21(r);
    if (o.demo == "example-3.10") return demo_example_310(r);
    return demo_lemma_32(r);
}

// ---------------------------------------------------------------------------------------------

void add_expr(CLI::App* sub, Options& o) {
    auto* inline_expr = sub->add_option("--expr", o.expr, "expression text");
    auto* file = sub->add_option("--expr-file", o.expr_file, "file holding the expression");
    inline_expr->excludes(file);
}

void add_point(CLI::App* sub, Options& o, bool required) {
    auto* opt = sub->add_option("--point", o.point, "matrix tuple JSON (file path or inline object)");
    if (required) opt->required();
}

void add_base(CLI::App* sub, Options& o) {
    sub->add_option("--at", o.at, "base point a1,a2,... (default: searched)");
    sub->add_option("--seed", o.seed, "seed for the base point search");
}

void add_limits(CLI::App* sub, Options& o) {
    sub->add_option("--max-symbolic-vars", o.max_symbolic_vars, "limit on commuting variables g*n^2")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-degree", o.max_degree, "limit on symbolic total degree")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Domains of noncommutative rational functions", "ncdomain"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "print one JSON object instead of key: value lines");
    app.fallthrough();

    auto* parse_cmd = app.add_subcommand("parse", "parse and print an expression");
    add_expr(parse_cmd, o);

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression at a matrix point");
    add_expr(eval_cmd, o);
    add_point(eval_cmd, o, true);

    auto* realize_cmd = app.add_subcommand("realize", "minimal realization about a scalar point");
    add_expr(realize_cmd, o);
    add_base(realize_cmd, o);

    auto* series_cmd = app.add_subcommand("series", "truncated series expansion");
    add_expr(series_cmd, o);
    series_cmd->add_option("--at", o.at, "expansion point (default 0)");
    series_cmd->add_option("--order", o.order, "largest word length");

    auto* shift_cmd = app.add_subcommand("shift", "left or right shift of the realization");
    add_expr(shift_cmd, o);
    add_base(shift_cmd, o);
    shift_cmd->add_option("--var", o.var, "1-based variable index")->required();
    shift_cmd->add_option("--side", o.side, "left or right")->check(CLI::IsMember({"left", "right"}));
    shift_cmd->add_option("--order", o.order, "largest word length of the printed series");

    auto* equal_cmd = app.add_subcommand("equal", "decide equality of two rational functions");
    add_expr(equal_cmd, o);
    equal_cmd->add_option("--other", o.other, "second expression")->required();
    equal_cmd->add_option("--seed", o.seed, "seed for the base point search");

    auto* domain_cmd = app.add_subcommand("domain", "decide membership in the domain");
    add_expr(domain_cmd, o);
    add_point(domain_cmd, o, true);
    add_base(domain_cmd, o);

    auto* witness_cmd = app.add_subcommand("witness", "expression defined at a point of the domain");
    add_expr(witness_cmd, o);
    add_point(witness_cmd, o, true);
    add_base(witness_cmd, o);
    witness_cmd->add_option("--max-chars", o.max_chars, "largest witness text to print");

    auto* edom_cmd = app.add_subcommand("edom", "extended domain membership via generic matrices");
    add_expr(edom_cmd, o);
    add_point(edom_cmd, o, true);
    add_limits(edom_cmd, o);
    edom_cmd->add_option("--copies", o.copies, "probe ampliations with 1..copies diagonal copies")
        ->check(CLI::PositiveNumber);

    auto* factor_cmd = app.add_subcommand("factor", "split the denominator on block-diagonal generic matrices");
    add_expr(factor_cmd, o);
    add_limits(factor_cmd, o);
    factor_cmd->add_option("--size", o.size, "block size n")->check(CLI::PositiveNumber);

    auto* construct_cmd = app.add_subcommand("construct-x", "singular point for an nc polynomial in x1..x4");
    add_expr(construct_cmd, o);
    construct_cmd->add_option("--save", o.save, "write the point as tuple JSON");

    auto* demo_cmd = app.add_subcommand("demo", "worked examples");
    demo_cmd->add_option("name", o.demo, "example-2.1 | example-3.10 | lemma-3.2")
        ->required()
        ->check(CLI::IsMember({"example-2.1", "example-3.10", "lemma-3.2"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    Report report;
    int code = kSuccess;
    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "parse") code = cmd_parse(o, report);
        else if (name == "eval") code = cmd_eval(o, report, err);
        else if (name == "realize") code = cmd_realize(o, report);
        else if (name == "series") code = cmd_series(o, report);
        else if (name == "shift") code = cmd_shift(o, report);
        else if (name == "equal") code = cmd_equal(o, report);
        else if (name == "domain") code = cmd_domain(o, report);
        else if (name == "witness") code = cmd_witness(o, report, err);
        else if (name == "edom") code = cmd_edom(o, report);
        else if (name == "factor") code = cmd_factor(o, report);
        else if (name == "construct-x") code = cmd_construct(o, report);
        else code = cmd_demo(o, report);
    } catch (const ParseError& e) {
        err << "error: parse error at position " << e.position() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const VariableOutOfRange& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SymbolicSizeLimit& e) {
        err << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const Error& e) {
        report.print(out, o.json);
        err << "error: " << e.what() << "\n";
        return kNegative;
    }
    report.print(out, o.json);
    if (!o.json && !o.demo.empty()) out << "json:\n" << report.data().dump(2) << "\n";
    return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"ncdomain"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ncdomain::cli
