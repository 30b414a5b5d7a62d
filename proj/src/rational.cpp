#include "ncdomain/rational.hpp"

#include <cctype>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error("malformed rational literal '" + std::string(text) + "'");
    BigInt p(std::string(num), 10);
    BigInt q(std::string(den), 10);
    if (q == 0) throw Error("zero denominator in rational literal '" + std::string(text) + "'");
    Rat r(p, q);
    r.canonicalize();
    if (negative) r = -r;
    return r;
}

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace ncdomain
