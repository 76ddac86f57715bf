#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ordfrag {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when q == 1.
std::string render_rational(const Rational& r);
/// Inverse of render_rational; throws DomainError on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

}  // namespace ordfrag
