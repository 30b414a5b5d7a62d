#include "ncdomain/json_io.hpp"

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

std::vector<Rat> vector_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(std::string(what) + " must be an array");
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from_json(v));
    return out;
}

Json column_to_json(const QMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m(i, 0)));
    return a;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw Error(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

}  // namespace

Json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(mpz_class(std::to_string(j.get<long long>())));
    throw Error("rational must be a string \"p/q\" or an integer");
}

Json to_json(const QMatrix& m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        entries.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

QMatrix matrix_from_json(const Json& j) {
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != rows) throw DimensionMismatch("matrix entries do not match rows");
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!entries[i].is_array() || entries[i].size() != cols)
            throw DimensionMismatch("matrix row " + std::to_string(i) + " does not match cols");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(entries[i][k]);
    }
    return m;
}

Json to_json(const MatTuple& x) {
    Json mats = Json::array();
    for (const auto& m : x.mats) mats.push_back(to_json(m));
    return Json{{"n", x.n}, {"g", x.g()}, {"X", std::move(mats)}};
}

MatTuple tuple_from_json(const Json& j) {
    MatTuple x;
    x.n = size_field(j, "n");
    const std::size_t g = size_field(j, "g");
    const Json& mats = field(j, "X");
    if (!mats.is_array() || mats.size() != g) throw DimensionMismatch("tuple has " + std::to_string(g) + " matrices declared");
    for (const auto& m : mats) x.mats.push_back(matrix_from_json(m));
    check_tuple(x);
    return x;
}

Json to_json(const Realization& r) {
    Json alpha = Json::array();
    for (const auto& a : r.base_point) alpha.push_back(to_json(a));
    Json mats = Json::array();
    for (const auto& a : r.A) mats.push_back(to_json(a));
    return Json{{"g", r.g}, {"d", r.size()}, {"alpha", std::move(alpha)}, {"c", column_to_json(r.c)},
                {"b", column_to_json(r.b)}, {"A", std::move(mats)}};
}

Realization realization_from_json(const Json& j) {
    Realization r;
    r.g = size_field(j, "g");
    const std::size_t d = size_field(j, "d");
    r.base_point = vector_from_json(field(j, "alpha"), "alpha");
    const auto c = vector_from_json(field(j, "c"), "c");
    const auto b = vector_from_json(field(j, "b"), "b");
    if (c.size() != d || b.size() != d) throw DimensionMismatch("c and b must have d entries");
    r.c = QMatrix::column(c);
    r.b = QMatrix::column(b);
    if (d == 0) r.c = r.b = QMatrix(0, 1);
    const Json& mats = field(j, "A");
    if (!mats.is_array()) throw Error("A must be an array");
    for (const auto& m : mats) r.A.push_back(matrix_from_json(m));
    validate(r);
    return r;
}

Json to_json(const MPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponents", e}, {"coefficient", to_json(c)}});
    return terms;
}

Json to_json(const FreeSeries& s) {
    Json terms = Json::array();
    for (const auto& [w, c] : s.terms()) terms.push_back(Json{{"word", format_word(w)}, {"coefficient", to_json(c)}});
    return terms;
}

Json to_json(const Check& c) { return Json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

Json to_json(const std::vector<Check>& report) {
    Json a = Json::array();
    for (const auto& c : report) a.push_back(to_json(c));
    return a;
}

}  // namespace ncdomain
