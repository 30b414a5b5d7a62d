#pragma once

#include <vector>

#include <json.hpp>

#include "ncdomain/domain.hpp"
#include "ncdomain/free_series.hpp"
#include "ncdomain/matrix.hpp"
#include "ncdomain/mpoly.hpp"
#include "ncdomain/rational.hpp"
#include "ncdomain/realization.hpp"

namespace ncdomain {

using Json = nlohmann::ordered_json;

// Rationals are strings "p" or "p/q"; integers are also accepted on input.
Json to_json(const Rat& q);
Rat rat_from_json(const Json& j);

// {"rows": r, "cols": c, "entries": [[...], ...]}
Json to_json(const QMatrix& m);
QMatrix matrix_from_json(const Json& j);

// {"n": n, "g": g, "X": [matrix, ...]}
Json to_json(const MatTuple& x);
MatTuple tuple_from_json(const Json& j);

// {"g": g, "d": d, "alpha": [...], "c": [...], "b": [...], "A": [matrix, ...]}
Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

// [{"exponents": [...], "coefficient": q}, ...] in increasing graded-lex order.
Json to_json(const MPoly& p);

// [{"word": "x1*x2", "coefficient": q}, ...] in word order.
Json to_json(const FreeSeries& s);

// {"check": name, "pass": bool, "detail": text}
Json to_json(const Check& c);
Json to_json(const std::vector<Check>& report);

}  // namespace ncdomain
