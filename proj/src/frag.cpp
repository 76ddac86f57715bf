#include "ordfrag/frag.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ordfrag/errors.hpp"
#include "ordfrag/simple.hpp"

namespace ordfrag {

namespace {

const SpaceDescriptor& leaf_space(const SpaceDescriptor& k, const std::vector<std::uint32_t>& path) {
    const SpaceDescriptor* cur = &k;
    for (auto i : path) cur = &cur->parts.at(i);
    return *cur;
}

bool contains(const std::vector<Point>& sorted, const Point& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

// p + fundamental tail test: some member of `pts` lies in (p[n-1], p).
bool truncated_limit_of(const Ordinal& p, const std::vector<Ordinal>& pts, std::uint64_t n) {
    if (classify(p).kind != OrdinalKind::limit) return false;
    Ordinal lo = fundamental_sequence(p, n == 0 ? 0 : n - 1);
    auto it = std::upper_bound(pts.begin(), pts.end(), lo);
    return it != pts.end() && *it < p;
}

std::uint64_t max_coefficient(const Ordinal& a) {
    std::uint64_t c = 0;
    for (const auto& t : a.terms()) c = std::max(c, t.coefficient);
    return c;
}

// Least limit p with exponent e above a that a approaches: a rounded up at exponent e.
Ordinal round_up(const Ordinal& a, std::uint32_t e) {
    std::vector<Term> terms;
    std::uint64_t c = 0;
    for (const auto& t : a.terms()) {
        if (t.exponent > e) {
            terms.push_back(t);
        } else {
            if (t.exponent == e) c = t.coefficient;
            break;
        }
    }
    terms.push_back({e, c + 1});
    return Ordinal(std::move(terms));
}

}  // namespace

std::vector<Point> sorted_points(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

LnDecomposition ln_decomposition(const PartitionTree& t, const StagedTree& s, const OpenPartition& p) {
    if (!verify_open_partition(s, p).ok()) throw DomainError("partition does not verify");
    if (s.source_ids().size() != s.size()) throw DomainError("staged tree carries no source ids");
    auto rk = ranks(s, p);
    std::size_t top_rank = 0;
    for (auto r : rk) top_rank = std::max(top_rank, r);

    LnDecomposition d;
    std::vector<Point> base{min_point(t.space), max_point(t.space)};
    for (std::size_t n = 0; n <= top_rank; ++n) {
        std::vector<Point> pts = base;
        for (NodeId x = 0; x < s.size(); ++x) {
            if (rk[x] > n) continue;
            const auto& iv = t.node(s.source_ids()[x]).interval;
            pts.push_back(iv.lo);
            pts.push_back(iv.hi);
        }
        d.levels.push_back(sorted_points(std::move(pts)));
    }
    for (std::size_t n = 0; n + 1 < d.levels.size(); ++n) {
        const auto& cur = d.levels[n];
        const auto& next = d.levels[n + 1];
        if (!std::includes(next.begin(), next.end(), cur.begin(), cur.end())) d.nested = false;
        std::vector<Point> fresh, in_gaps;
        std::set_difference(next.begin(), next.end(), cur.begin(), cur.end(), std::back_inserter(fresh));
        for (const auto& [x, y] : delta_pairs(t.space, cur)) {
            for (const auto& q : next) {
                if (x < q && q < y) in_gaps.push_back(q);
            }
        }
        if (sorted_points(std::move(in_gaps)) != fresh) d.gap_identity = false;
    }
    return d;
}

std::vector<Point> ln_union(const LnDecomposition& d) {
    std::vector<Point> all;
    for (const auto& l : d.levels) all.insert(all.end(), l.begin(), l.end());
    return sorted_points(std::move(all));
}

ScatterReport verify_scattered_closed(const SpaceDescriptor& k, const std::vector<Point>& a_in, std::uint64_t truncation) {
    for (const auto& p : a_in) require_valid(k, p);
    auto a = sorted_points(a_in);
    ScatterReport r;

    std::map<std::vector<std::uint32_t>, std::vector<Ordinal>> ordinal_groups;
    for (const auto& p : a) {
        if (auto* o = std::get_if<Ordinal>(&p.leaf)) ordinal_groups[p.path].push_back(*o);
    }

    for (const auto& [path, pts] : ordinal_groups) {
        const auto& alpha = leaf_space(k, path).alpha;
        // Candidates needing a larger coefficient than any point of A lie beyond the materialized prefix.
        std::uint64_t extent = 0;
        for (const auto& q : pts) extent = std::max(extent, max_coefficient(q));
        for (const auto& q : pts) {
            for (std::uint32_t e = 1; e <= degree(alpha) && !r.missing_limit; ++e) {
                Ordinal cand = round_up(q, e);
                if (cand > alpha || max_coefficient(cand) > extent) continue;
                Point cp{path, cand};
                if (!contains(a, cp) && truncated_limit_of(cand, pts, truncation)) {
                    r.closed = false;
                    r.missing_limit = cp;
                }
            }
        }
    }

    // Points outside ordinal parts are isolated; each round keeps truncated limits of the previous set.
    std::map<std::vector<std::uint32_t>, std::vector<Ordinal>> cur = ordinal_groups;
    bool nonempty = !a.empty();
    std::size_t rounds = 0;
    while (nonempty) {
        ++rounds;
        nonempty = false;
        std::map<std::vector<std::uint32_t>, std::vector<Ordinal>> next;
        for (const auto& [path, pts] : cur) {
            std::vector<Ordinal> keep;
            for (const auto& q : pts) {
                if (truncated_limit_of(q, pts, truncation)) keep.push_back(q);
            }
            if (!keep.empty()) {
                nonempty = true;
                next[path] = std::move(keep);
            }
        }
        cur = std::move(next);
        if (rounds > a.size() + 1) {
            r.scattered = false;
            break;
        }
    }
    r.cb_rank = rounds == 0 ? 0 : rounds - 1;
    return r;
}

std::vector<Point> truncated_ordinal_points(const Ordinal& alpha, std::uint64_t truncation) {
    // Raising the cap to alpha's own coefficients keeps the set uniform, hence closed.
    truncation = std::max(truncation, max_coefficient(alpha));
    std::uint32_t d = degree(alpha);
    std::vector<std::uint64_t> coef(d + 1, 0);
    std::vector<Point> out;
    while (true) {
        std::vector<Term> terms;
        for (std::uint32_t e = d + 1; e-- > 0;) {
            if (coef[e] > 0) terms.push_back({e, coef[e]});
        }
        Ordinal o(std::move(terms));
        if (o <= alpha) out.push_back(Point::ordinal(o));
        std::uint32_t i = 0;
        while (i <= d && coef[i] == truncation) coef[i++] = 0;
        if (i > d) break;
        ++coef[i];
    }
    out.push_back(Point::ordinal(alpha));
    return sorted_points(std::move(out));
}

std::optional<PointPair> verify_density(const SpaceDescriptor& k, const std::vector<Point>& l_in,
                                        const std::vector<PointPair>& pairs) {
    auto l = sorted_points(l_in);
    for (const auto& [u, v] : pairs) {
        require_valid(k, u);
        require_valid(k, v);
        if (!(u < v)) throw DomainError("density pair is not increasing");
        auto lo = std::lower_bound(l.begin(), l.end(), u);
        auto hi = std::upper_bound(l.begin(), l.end(), v);
        if (hi - lo < 2) return PointPair{u, v};
    }
    return std::nullopt;
}

GapPairs delta_pairs(const SpaceDescriptor& k, const std::vector<Point>& ln) {
    for (const auto& p : ln) require_valid(k, p);
    auto l = sorted_points(ln);
    GapPairs g;
    for (std::size_t i = 0; i + 1 < l.size(); ++i) g.emplace_back(l[i], l[i + 1]);
    return g;
}

Rational MetricTable::operator()(const Point& u, const Point& v) const {
    auto iu = std::find(points.begin(), points.end(), u);
    auto iv = std::find(points.begin(), points.end(), v);
    if (iu == points.end() || iv == points.end()) throw DomainError("point outside the metric table");
    return d[iu - points.begin()][iv - points.begin()];
}

std::string MetricTable::validate(bool require_triangle) const {
    const auto n = points.size();
    if (d.size() != n) return "table is not square";
    for (const auto& row : d) {
        if (row.size() != n) return "table is not square";
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != Rational(0)) return "nonzero diagonal";
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0) return "negative entry";
            if (d[i][j] != d[j][i]) return "asymmetric entry";
            if (!require_triangle) continue;
            for (std::size_t m = 0; m < n; ++m) {
                if (d[i][m] > d[i][j] + d[j][m]) return "triangle inequality fails";
            }
        }
    }
    return {};
}

std::optional<FragmentWitness> fragment_check(const SpaceDescriptor& k, const std::vector<Point>& m_in, const DistanceFn& d,
                                              const Rational& eps, WitnessPreference pref) {
    if (m_in.empty()) throw DomainError("fragment_check needs a nonempty set");
    if (eps <= 0) throw DomainError("epsilon must be positive");
    for (const auto& p : m_in) require_valid(k, p);
    auto m = sorted_points(m_in);
    const std::size_t n = m.size();
    // diam[i][j]: diameter of the run m[i..j]
    std::vector<std::vector<Rational>> diam(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len - 1;
            Rational best = std::max(diam[i][j - 1], diam[i + 1][j]);
            best = std::max(best, d(m[i], m[j]));
            diam[i][j] = best;
        }
    }
    auto make = [&](std::size_t i, std::size_t j) {
        FragmentWitness w;
        if (i > 0) w.lo = m[i - 1];
        if (j + 1 < n) w.hi = m[j + 1];
        w.members.assign(m.begin() + static_cast<std::ptrdiff_t>(i), m.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        w.diameter = diam[i][j];
        return w;
    };
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t len = pref == WitnessPreference::minimal ? step + 1 : n - step;
        for (std::size_t i = 0; i + len <= n; ++i) {
            if (diam[i][i + len - 1] < eps) return make(i, i + len - 1);
        }
    }
    return std::nullopt;
}

WeightReport weight_bound(const StagedTree& s) {
    WeightReport w;
    auto tops = s.top_nodes();
    w.top_size = tops.size();
    w.pool_size = s.pool_nodes().size();
    w.simple = is_simple(s, tops).simple;
    w.holds = w.top_size <= w.pool_size;
    w.margin = static_cast<long long>(w.top_size) - static_cast<long long>(w.pool_size);
    return w;
}

PartitionChain chain_from_partition(const StagedTree& s, const OpenPartition& p) {
    PartitionChain out;
    auto idx = p.cell_index(s.size());
    std::map<std::pair<std::uint32_t, NodeId>, std::vector<NodeId>> groups;
    for (auto a : s.top_nodes()) {
        NodeId anchor = a;
        while (anchor != s.root() && idx[s.parent(anchor)] == idx[a]) anchor = s.parent(anchor);
        groups[{s.level(anchor), anchor}].push_back(a);
    }
    for (const auto& [key, members] : groups) {
        std::size_t len = p.cells.at(idx[members.front()]).size();
        bool better = members.size() > out.group_size ||
                      (members.size() == out.group_size && len > out.length);
        if (!better) continue;
        out.group_size = members.size();
        out.length = len;
        out.anchor = key.second;
        out.chain = p.cells.at(idx[members.front()]);
    }
    return out;
}

}  // namespace ordfrag
