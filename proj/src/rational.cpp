#include "ordfrag/rational.hpp"

#include <charconv>

#include "ordfrag/errors.hpp"

namespace ordfrag {

std::string render_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {
std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("malformed rational component '" + std::string(s) + "'");
    }
    return v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    auto num = parse_int(std::string_view(text).substr(0, slash));
    auto den = parse_int(std::string_view(text).substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

}  // namespace ordfrag
