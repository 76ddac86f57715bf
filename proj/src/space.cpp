#include "ordfrag/space.hpp"

#include <algorithm>
#include <charconv>

#include "ordfrag/errors.hpp"

namespace ordfrag {

SpaceDescriptor SpaceDescriptor::finite_chain(std::uint64_t n) {
    if (n == 0) throw DomainError("finite chain must have at least one point");
    SpaceDescriptor k;
    k.kind = SpaceKind::finite;
    k.size = n;
    return k;
}

SpaceDescriptor SpaceDescriptor::ordinal_interval(Ordinal alpha) {
    SpaceDescriptor k;
    k.kind = SpaceKind::ordinal;
    k.alpha = std::move(alpha);
    return k;
}

SpaceDescriptor SpaceDescriptor::split_chain(std::uint64_t n) {
    if (n == 0) throw DomainError("split chain must have at least one index");
    SpaceDescriptor k;
    k.kind = SpaceKind::split;
    k.size = n;
    return k;
}

SpaceDescriptor SpaceDescriptor::order_sum(std::vector<SpaceDescriptor> parts) {
    if (parts.empty()) throw DomainError("order sum needs at least one part");
    SpaceDescriptor k;
    k.kind = SpaceKind::sum;
    k.parts = std::move(parts);
    return k;
}

Point Point::in_part(std::uint32_t part, Point inner) {
    inner.path.insert(inner.path.begin(), part);
    return inner;
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.path <=> b.path; c != 0) return c;
    if (a.leaf.index() != b.leaf.index()) return a.leaf.index() <=> b.leaf.index();
    return std::visit(
        [&](const auto& x) -> std::strong_ordering {
            using T = std::decay_t<decltype(x)>;
            return x <=> std::get<T>(b.leaf);
        },
        a.leaf);
}

namespace {

std::uint64_t split_linear(const SplitPoint& s) { return 2 * s.index + static_cast<std::uint64_t>(s.side); }
SplitPoint split_from_linear(std::uint64_t i) { return {i / 2, static_cast<Side>(i % 2)}; }

Point with_path(std::vector<std::uint32_t> path, PointLeaf leaf) { return {std::move(path), std::move(leaf)}; }

// Strip the first path element.
Point inner_point(const Point& p) {
    Point q = p;
    q.path.erase(q.path.begin());
    return q;
}

}  // namespace

bool is_valid(const SpaceDescriptor& k, const Point& p) {
    switch (k.kind) {
        case SpaceKind::sum:
            if (p.path.empty() || p.path.front() >= k.parts.size()) return false;
            return is_valid(k.parts[p.path.front()], inner_point(p));
        case SpaceKind::finite:
            return p.path.empty() && std::holds_alternative<std::uint64_t>(p.leaf) &&
                   std::get<std::uint64_t>(p.leaf) < k.size;
        case SpaceKind::ordinal:
            return p.path.empty() && std::holds_alternative<Ordinal>(p.leaf) &&
                   std::get<Ordinal>(p.leaf) <= k.alpha;
        case SpaceKind::split:
            return p.path.empty() && std::holds_alternative<SplitPoint>(p.leaf) &&
                   std::get<SplitPoint>(p.leaf).index < k.size;
    }
    return false;
}

void require_valid(const SpaceDescriptor& k, const Point& p) {
    if (!is_valid(k, p)) throw DomainError("point " + render_point(p) + " is not in " + describe(k));
}

void require_valid(const SpaceDescriptor& k, const ClosedInterval& i) {
    require_valid(k, i.lo);
    require_valid(k, i.hi);
    if (i.hi < i.lo) throw DomainError("interval endpoints out of order");
}

std::strong_ordering compare_points(const SpaceDescriptor& k, const Point& p, const Point& q) {
    require_valid(k, p);
    require_valid(k, q);
    return p <=> q;
}

Point min_point(const SpaceDescriptor& k) {
    switch (k.kind) {
        case SpaceKind::finite: return Point::index(0);
        case SpaceKind::ordinal: return Point::ordinal(Ordinal{});
        case SpaceKind::split: return Point::split(0, Side::minus);
        case SpaceKind::sum: return Point::in_part(0, min_point(k.parts.front()));
    }
    return {};
}

Point max_point(const SpaceDescriptor& k) {
    switch (k.kind) {
        case SpaceKind::finite: return Point::index(k.size - 1);
        case SpaceKind::ordinal: return Point::ordinal(k.alpha);
        case SpaceKind::split: return Point::split(k.size - 1, Side::plus);
        case SpaceKind::sum:
            return Point::in_part(static_cast<std::uint32_t>(k.parts.size() - 1), max_point(k.parts.back()));
    }
    return {};
}

ClosedInterval whole_space(const SpaceDescriptor& k) { return {min_point(k), max_point(k)}; }

Adjacency adjacency(const SpaceDescriptor& k, const Point& p) {
    require_valid(k, p);
    Adjacency out;
    switch (k.kind) {
        case SpaceKind::finite: {
            auto i = std::get<std::uint64_t>(p.leaf);
            if (i > 0) out.predecessor = Point::index(i - 1);
            if (i + 1 < k.size) out.successor = Point::index(i + 1);
            break;
        }
        case SpaceKind::ordinal: {
            const auto& a = std::get<Ordinal>(p.leaf);
            auto c = classify(a);
            if (c.kind == OrdinalKind::successor) out.predecessor = Point::ordinal(*c.predecessor);
            if (a < k.alpha) out.successor = Point::ordinal(successor(a));
            break;
        }
        case SpaceKind::split: {
            auto i = split_linear(std::get<SplitPoint>(p.leaf));
            if (i > 0) out.predecessor = with_path({}, split_from_linear(i - 1));
            if (i + 1 < 2 * k.size) out.successor = with_path({}, split_from_linear(i + 1));
            break;
        }
        case SpaceKind::sum: {
            auto part = p.path.front();
            auto inner = adjacency(k.parts[part], inner_point(p));
            if (inner.predecessor) {
                out.predecessor = Point::in_part(part, *inner.predecessor);
            } else if (part > 0 && inner_point(p) == min_point(k.parts[part])) {
                out.predecessor = Point::in_part(part - 1, max_point(k.parts[part - 1]));
            }
            if (inner.successor) {
                out.successor = Point::in_part(part, *inner.successor);
            } else if (part + 1 < k.parts.size()) {
                out.successor = Point::in_part(part + 1, min_point(k.parts[part + 1]));
            }
            break;
        }
    }
    return out;
}

bool is_left_limit(const SpaceDescriptor& k, const Point& p) {
    return p != min_point(k) && !adjacency(k, p).predecessor.has_value();
}

namespace {

PointCount count_unchecked(const SpaceDescriptor& k, const Point& lo, const Point& hi) {
    switch (k.kind) {
        case SpaceKind::finite:
            return std::get<std::uint64_t>(hi.leaf) - std::get<std::uint64_t>(lo.leaf) + 1;
        case SpaceKind::split:
            return split_linear(std::get<SplitPoint>(hi.leaf)) - split_linear(std::get<SplitPoint>(lo.leaf)) + 1;
        case SpaceKind::ordinal: {
            const auto& a = std::get<Ordinal>(lo.leaf);
            const auto& b = std::get<Ordinal>(hi.leaf);
            if (a.limit_part() != b.limit_part()) return std::nullopt;
            return b.finite_part() - a.finite_part() + 1;
        }
        case SpaceKind::sum: {
            auto pa = lo.path.front();
            auto pb = hi.path.front();
            auto il = inner_point(lo);
            auto ih = inner_point(hi);
            if (pa == pb) return count_unchecked(k.parts[pa], il, ih);
            std::uint64_t total = 0;
            for (auto j = pa; j <= pb; ++j) {
                const auto& part = k.parts[j];
                auto c = count_unchecked(part, j == pa ? il : min_point(part), j == pb ? ih : max_point(part));
                if (!c) return std::nullopt;
                total += *c;
            }
            return total;
        }
    }
    return std::nullopt;
}

Point split_unchecked(const SpaceDescriptor& k, const Point& lo, const Point& hi);

// The point `offset` steps above `lo` in a finite stretch.
Point step_up(const SpaceDescriptor& k, Point p, std::uint64_t offset) {
    switch (k.kind) {
        case SpaceKind::finite: return Point::index(std::get<std::uint64_t>(p.leaf) + offset);
        case SpaceKind::split: return with_path({}, split_from_linear(split_linear(std::get<SplitPoint>(p.leaf)) + offset));
        case SpaceKind::ordinal: return Point::ordinal(add(std::get<Ordinal>(p.leaf), Ordinal::finite(offset), degree(k.alpha)));
        case SpaceKind::sum: {
            while (offset > 0) {
                auto part = p.path.front();
                auto inner = inner_point(p);
                auto to_end = count_unchecked(k.parts[part], inner, max_point(k.parts[part]));
                if (to_end && *to_end - 1 < offset) {
                    offset -= *to_end;
                    p = Point::in_part(part + 1, min_point(k.parts[part + 1]));
                } else {
                    return Point::in_part(part, step_up(k.parts[part], inner, offset));
                }
            }
            return p;
        }
    }
    return p;
}

Point split_unchecked(const SpaceDescriptor& k, const Point& lo, const Point& hi) {
    switch (k.kind) {
        case SpaceKind::finite:
        case SpaceKind::split: {
            auto n = *count_unchecked(k, lo, hi);
            return step_up(k, lo, (n - 1) / 2);
        }
        case SpaceKind::ordinal: {
            const auto& a = std::get<Ordinal>(lo.leaf);
            const auto& b = std::get<Ordinal>(hi.leaf);
            for (auto e = degree(b) + 1; e-- > 0;) {
                auto w = add(a, Ordinal::omega_power(e), degree(b));
                if (w < b) return Point::ordinal(w);
            }
            throw DomainError("interval too small to split");
        }
        case SpaceKind::sum: {
            auto pa = lo.path.front();
            auto pb = hi.path.front();
            if (pa == pb) return Point::in_part(pa, split_unchecked(k.parts[pa], inner_point(lo), inner_point(hi)));
            // Part holding the lower median, or the middle part when infinite.
            auto median_part = pa + (pb - pa) / 2;
            if (auto n = count_unchecked(k, lo, hi)) {
                median_part = step_up(k, lo, (*n - 1) / 2).path.front();
            }
            std::vector<Point> candidates;
            auto consider = [&](const Point& c) {
                if (lo < c && c < hi) candidates.push_back(c);
            };
            consider(Point::in_part(median_part, max_point(k.parts[median_part])));
            consider(Point::in_part(median_part, min_point(k.parts[median_part])));
            for (auto j = pa; j <= pb; ++j) {
                consider(Point::in_part(j, min_point(k.parts[j])));
                consider(Point::in_part(j, max_point(k.parts[j])));
            }
            if (candidates.empty()) throw DomainError("interval too small to split");
            return candidates.front();
        }
    }
    throw DomainError("unknown space kind");
}

}  // namespace

PointCount point_count(const SpaceDescriptor& k, const ClosedInterval& i) {
    require_valid(k, i);
    return count_unchecked(k, i.lo, i.hi);
}

Point canonical_split(const SpaceDescriptor& k, const ClosedInterval& i) {
    require_valid(k, i);
    auto n = count_unchecked(k, i.lo, i.hi);
    if (n && *n < 3) throw DomainError("canonical_split needs an interval with at least three points");
    return split_unchecked(k, i.lo, i.hi);
}

std::vector<Point> enumerate(const SpaceDescriptor& k, const ClosedInterval& i) {
    auto n = point_count(k, i);
    if (!n) throw DomainError("cannot enumerate an infinite interval");
    std::vector<Point> out;
    out.reserve(*n);
    Point p = i.lo;
    for (std::uint64_t j = 0; j < *n; ++j) {
        out.push_back(p);
        if (j + 1 < *n) p = *adjacency(k, p).successor;
    }
    return out;
}

bool is_finite_space(const SpaceDescriptor& k) { return point_count(k, whole_space(k)).has_value(); }

std::string render_point(const Point& p) {
    std::string out;
    for (auto part : p.path) out += "part" + std::to_string(part) + ":";
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::uint64_t>) {
                out += std::to_string(x);
            } else if constexpr (std::is_same_v<T, Ordinal>) {
                out += render(x);
            } else {
                out += "(" + std::to_string(x.index) + (x.side == Side::minus ? ",-)" : ",+)");
            }
        },
        p.leaf);
    return out;
}

Point parse_point(const SpaceDescriptor& k, const std::string& text) {
    auto fail = [&]() -> Point { throw DomainError("malformed point '" + text + "' for " + describe(k)); };
    Point p;
    switch (k.kind) {
        case SpaceKind::sum: {
            if (text.rfind("part", 0) != 0) return fail();
            auto colon = text.find(':');
            if (colon == std::string::npos) return fail();
            std::uint32_t part = 0;
            auto [ptr, ec] = std::from_chars(text.data() + 4, text.data() + colon, part);
            if (ec != std::errc() || ptr != text.data() + colon || part >= k.parts.size()) return fail();
            p = Point::in_part(part, parse_point(k.parts[part], text.substr(colon + 1)));
            break;
        }
        case SpaceKind::finite: {
            auto it = std::find(k.labels.begin(), k.labels.end(), text);
            if (it != k.labels.end()) {
                p = Point::index(static_cast<std::uint64_t>(it - k.labels.begin()));
                break;
            }
            std::uint64_t i = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
            if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return fail();
            p = Point::index(i);
            break;
        }
        case SpaceKind::ordinal:
            p = Point::ordinal(parse_ordinal(text));
            break;
        case SpaceKind::split: {
            if (text.size() < 5 || text.front() != '(' || text.back() != ')') return fail();
            auto comma = text.find(',');
            if (comma == std::string::npos || comma + 3 != text.size()) return fail();
            std::uint64_t i = 0;
            auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + comma, i);
            if (ec != std::errc() || ptr != text.data() + comma) return fail();
            char s = text[comma + 1];
            if (s != '-' && s != '+') return fail();
            p = Point::split(i, s == '-' ? Side::minus : Side::plus);
            break;
        }
    }
    require_valid(k, p);
    return p;
}

std::string describe(const SpaceDescriptor& k) {
    switch (k.kind) {
        case SpaceKind::finite: return "FiniteChain(" + std::to_string(k.size) + ")";
        case SpaceKind::ordinal: return "OrdinalInterval(" + render(k.alpha) + ")";
        case SpaceKind::split: return "SplitChain(" + std::to_string(k.size) + ")";
        case SpaceKind::sum: {
            std::string out = "OrderSum(";
            for (std::size_t i = 0; i < k.parts.size(); ++i) {
                if (i) out += ", ";
                out += describe(k.parts[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

}  // namespace ordfrag
