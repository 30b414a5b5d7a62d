#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "ncdomain/cli.hpp"
#include "ncdomain/errors.hpp"
#include "ncdomain/expr.hpp"
#include "ncdomain/json_io.hpp"
#include "ncdomain/realization.hpp"

using ncdomain::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kSwapPoint =
    R"({"n":1,"g":4,"X":[{"rows":1,"cols":1,"entries":[["0"]]},{"rows":1,"cols":1,"entries":[["1"]]},)"
    R"({"rows":1,"cols":1,"entries":[["1"]]},{"rows":1,"cols":1,"entries":[["0"]]}]})";
const char* kSingularPoint =
    R"({"n":1,"g":4,"X":[{"rows":1,"cols":1,"entries":[["1"]]},{"rows":1,"cols":1,"entries":[["2"]]},)"
    R"({"rows":1,"cols":1,"entries":[["1"]]},{"rows":1,"cols":1,"entries":[[2]]}]})";
const char* kNilpotent =
    R"({"n":2,"g":1,"X":[{"rows":2,"cols":2,"entries":[["0","1"],["0","0"]]}]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("json round trips") {
    using namespace ncdomain;
    const Rat q = rat(-7, 3);
    CHECK(to_json(q) == Json("-7/3"));
    CHECK(rat_from_json(to_json(q)) == q);
    CHECK(rat_from_json(Json(4)) == 4);
    const QMatrix m{{1, rat(1, 2)}, {0, -3}};
    CHECK(matrix_from_json(to_json(m)) == m);
    const MatTuple x{2, {m, QMatrix{{0, 1}, {0, 0}}}};
    const MatTuple y = tuple_from_json(to_json(x));
    CHECK(y.n == 2);
    CHECK(y.mats == x.mats);
    const Realization r = build(parse("(1 - x1)*x2*(1 - x1)^-1"), std::vector<Rat>{2, 3}, 2);
    const Realization s = realization_from_json(to_json(r));
    CHECK(s.c == r.c);
    CHECK(s.b == r.b);
    CHECK(s.A == r.A);
    CHECK(s.base_point == r.base_point);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":2,"cols":1,"entries":[["1"]]})")), Error);
}

TEST_CASE("parse prints the canonical form") {
    const Result r = call({"parse", "--expr", "inv(x4 - x3*inv(x1)*x2)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("expr: (x4 - x3*x1^-1*x2)^-1\n") != std::string::npos);
    CHECK(r.out.find("variables: 4\n") != std::string::npos);
}

TEST_CASE("eval reports the undefined subexpression") {
    const Result r = call({"eval", "--expr", "x1^-1", "--point", kNilpotent});
    CHECK(r.code == 1);
    CHECK(r.err.find("undefined at subexpression x1^-1") != std::string::npos);
    const Result ok = call({"eval", "--expr", "(1 + x1)^-1", "--point", kNilpotent, "--json"});
    CHECK(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["value"]["entries"][0][1] == "-1");
}

TEST_CASE("domain decides by the block determinant") {
    const Result in = call({"domain", "--expr", "inv(x4 - x3*inv(x1)*x2)", "--point", kSwapPoint});
    CHECK(in.code == 0);
    CHECK(in.out.find("in-domain: true") != std::string::npos);
    CHECK(in.out.find("expression_defined: false") != std::string::npos);
    const Result out = call({"domain", "--expr", "inv(x4 - x3*inv(x1)*x2)", "--point", kSingularPoint});
    CHECK(out.code == 1);
    CHECK(out.out.find("in-domain: false") != std::string::npos);
}

TEST_CASE("witness command") {
    const Result r = call({"witness", "--expr", "inv(x4 - x3*inv(x1)*x2)", "--point", kSwapPoint, "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["matches_realization"] == true);
    CHECK(j["witness_defined"] == true);
    const Result big = call({"witness", "--expr", "inv(x4 - x3*inv(x1)*x2)", "--point", kSwapPoint, "--max-chars", "5"});
    CHECK(big.code == 3);
    const Result none = call({"witness", "--expr", "inv(x4 - x3*inv(x1)*x2)", "--point", kSingularPoint});
    CHECK(none.code == 1);
}

TEST_CASE("realize, series and shift") {
    const Result r = call({"realize", "--expr", "(1 - x1)*x2*(1 - x1)^-1", "--json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["size"] == 3);
    const Result s = call({"series", "--expr", "(1 - x1)*x2*(1 - x1)^-1", "--order", "2", "--json"});
    CHECK(s.code == 0);
    const auto terms = nlohmann::json::parse(s.out)["terms"];
    CHECK(terms.size() == 3);
    const Result sh = call({"shift", "--expr", "(1 - x1)*x2*(1 - x1)^-1", "--var", "2"});
    CHECK(sh.code == 0);
    CHECK(sh.out.find("size: 1\n") != std::string::npos);
    const Result at = call({"realize", "--expr", "x1^-1", "--at", "0"});
    CHECK(at.code == 1);
}

TEST_CASE("equal") {
    CHECK(call({"equal", "--expr", "x1^-1*x2^-1", "--other", "(x2*x1)^-1"}).code == 0);
    const Result r = call({"equal", "--expr", "x1*x2", "--other", "x2*x1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("verdict: unequal") != std::string::npos);
    CHECK(call({"equal", "--expr", "(x1*x2 - x2*x1)^-1", "--other", "0"}).out.find("unknown") != std::string::npos);
}

TEST_CASE("edom and factor") {
    const char* point = R"({"n":2,"g":2,"X":[{"rows":2,"cols":2,"entries":[["1","0"],["0","0"]]},)"
                        R"({"rows":2,"cols":2,"entries":[["1","0"],["0","0"]]}]})";
    const Result r = call({"edom", "--expr", "(1 - x1)*x2*(1 - x1)^-1", "--point", point});
    CHECK(r.code == 1);
    CHECK(r.out.find("member: false") != std::string::npos);
    const Result f = call({"factor", "--expr", "x1^-1"});
    CHECK(f.code == 0);
    CHECK(f.out.find("p1: xi_1_1_1\n") != std::string::npos);
    CHECK(f.out.find("product_matches: true") != std::string::npos);
}

TEST_CASE("construct-x") {
    const Result r = call({"construct-x", "--expr", "x1*x2", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["M"] == 4);
    CHECK(j["N"] == 15);
    CHECK(j["size"] == 20);
}

TEST_CASE("demos are reproducible") {
    const Result a = call({"demo", "example-2.1"});
    CHECK(a.code == 0);
    CHECK(a.out.find("minimal_size: 3\n") != std::string::npos);
    CHECK(a.out.find("(1+0,1+0) in edom2: false") != std::string::npos);
    CHECK(a.out == call({"demo", "example-2.1"}).out);
    CHECK(call({"demo", "lemma-3.2"}).code == 0);
}

TEST_CASE("usage and resource errors") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"parse"}).code == 2);
    CHECK(call({"parse", "--expr", "x1 +"}).code == 2);
    CHECK(call({"eval", "--expr", "x1"}).code == 2);
    CHECK(call({"eval", "--expr", "x1", "--point", "{not json"}).code == 2);
    CHECK(call({"eval", "--expr", "x3", "--point", kNilpotent}).code == 2);
    CHECK(call({"demo", "example-9"}).code == 2);
    CHECK(call({"domain", "--expr", "x1^-1", "--point", kNilpotent, "--at", "0,1"}).code == 2);
    const char* big = R"({"n":3,"g":3,"X":[{"rows":3,"cols":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]},)"
                      R"({"rows":3,"cols":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]},)"
                      R"({"rows":3,"cols":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}]})";
    CHECK(call({"edom", "--expr", "x1*x2*x3", "--point", big}).code == 3);
    CHECK(call({"--help"}).code == 0);
}

}
