#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordfrag/ordinal.hpp"

namespace ordfrag {

enum class SpaceKind { finite, ordinal, split, sum };

/*
 * Description of a compact linearly ordered space.
 *
 *   finite  - the chain 0 < 1 < ... < size-1, optionally labelled
 *   ordinal - the ordinal interval [0, alpha]
 *   split   - 2*size points (i,-) < (i,+) ordered lexicographically
 *   sum     - the ordered concatenation of its parts
 */
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::finite;
    std::uint64_t size = 1;
    std::vector<std::string> labels;
    Ordinal alpha;
    std::vector<SpaceDescriptor> parts;

    static SpaceDescriptor finite_chain(std::uint64_t n);
    static SpaceDescriptor ordinal_interval(Ordinal alpha);
    static SpaceDescriptor split_chain(std::uint64_t n);
    static SpaceDescriptor order_sum(std::vector<SpaceDescriptor> parts);

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

enum class Side : std::uint8_t { minus = 0, plus = 1 };

struct SplitPoint {
    std::uint64_t index = 0;
    Side side = Side::minus;

    friend bool operator==(const SplitPoint&, const SplitPoint&) = default;
    friend auto operator<=>(const SplitPoint&, const SplitPoint&) = default;
};

using PointLeaf = std::variant<std::uint64_t, Ordinal, SplitPoint>;

/*
 * A point of a described space. `path` lists the part indices taken through
 * nested order sums; `leaf` is the point inside the innermost non-sum part.
 * For points valid in the same descriptor the defaulted ordering is the
 * order of the space.
 */
struct Point {
    std::vector<std::uint32_t> path;
    PointLeaf leaf;

    static Point index(std::uint64_t i) { return {{}, i}; }
    static Point ordinal(Ordinal a) { return {{}, std::move(a)}; }
    static Point split(std::uint64_t i, Side s) { return {{}, SplitPoint{i, s}}; }
    static Point in_part(std::uint32_t part, Point inner);

    friend bool operator==(const Point&, const Point&) = default;
    friend std::strong_ordering operator<=>(const Point& a, const Point& b);
};

struct ClosedInterval {
    Point lo;
    Point hi;

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

struct Adjacency {
    std::optional<Point> predecessor;
    std::optional<Point> successor;
};

/// Exact size of an interval, or nullopt for countably infinite.
using PointCount = std::optional<std::uint64_t>;

bool is_valid(const SpaceDescriptor& k, const Point& p);
/// Throws DomainError if `p` is not a point of `k`.
void require_valid(const SpaceDescriptor& k, const Point& p);
void require_valid(const SpaceDescriptor& k, const ClosedInterval& i);

std::strong_ordering compare_points(const SpaceDescriptor& k, const Point& p, const Point& q);

Point min_point(const SpaceDescriptor& k);
Point max_point(const SpaceDescriptor& k);
ClosedInterval whole_space(const SpaceDescriptor& k);

Adjacency adjacency(const SpaceDescriptor& k, const Point& p);

PointCount point_count(const SpaceDescriptor& k, const ClosedInterval& i);

/// Split point strictly inside an interval of at least three points.
Point canonical_split(const SpaceDescriptor& k, const ClosedInterval& i);

/// All points of a finite interval in increasing order. Throws DomainError if infinite.
std::vector<Point> enumerate(const SpaceDescriptor& k, const ClosedInterval& i);

bool is_finite_space(const SpaceDescriptor& k);

/// Whether `p` is a limit from the left (no immediate predecessor and not the minimum).
bool is_left_limit(const SpaceDescriptor& k, const Point& p);

std::string render_point(const Point& p);
Point parse_point(const SpaceDescriptor& k, const std::string& text);

std::string describe(const SpaceDescriptor& k);

}  // namespace ordfrag
