#pragma once

#include <string>
#include <vector>

#include "ordfrag/ordinal.hpp"
#include "ordfrag/space.hpp"

namespace ordfrag::testing {

inline Ordinal O(const std::string& text) { return parse_ordinal(text); }
inline Point N(std::uint64_t i) { return Point::index(i); }
inline Point W(const std::string& text) { return Point::ordinal(parse_ordinal(text)); }

inline std::vector<Point> indices(std::initializer_list<std::uint64_t> xs) {
    std::vector<Point> out;
    for (auto x : xs) out.push_back(N(x));
    return out;
}

}  // namespace ordfrag::testing
