#include "ordfrag/rnwit.hpp"

#include <algorithm>
#include <set>

#include "ordfrag/errors.hpp"

namespace ordfrag {

Family separating_family(const SpaceDescriptor& k, const std::vector<GapPairs>& deltas) {
    Family out;
    for (std::size_t n = 1; n < deltas.size(); ++n) {
        for (const auto& [x, y] : deltas[n]) {
            require_valid(k, x);
            require_valid(k, y);
            auto succ = adjacency(k, x).successor;
            if (!succ || y < *succ) throw NoClopenCut("no clopen cut between " + render_point(x) + " and " + render_point(y));
            out.push_back({x, y, static_cast<std::uint32_t>(n), x, *succ, Rational(1, static_cast<std::int64_t>(n))});
        }
    }
    return out;
}

std::vector<GapPairs> decomposition_deltas(const SpaceDescriptor& k, const LnDecomposition& d) {
    std::vector<GapPairs> out;
    for (const auto& l : d.levels) out.push_back(delta_pairs(k, l));
    return out;
}

std::optional<PointPair> check_separation(const Family& family, const std::vector<PointPair>& pairs) {
    for (const auto& [u, v] : pairs) {
        bool separated = std::any_of(family.begin(), family.end(), [&](const StepFunction& f) { return f(u) != f(v); });
        if (!separated) return PointPair{u, v};
    }
    return std::nullopt;
}

Rational PseudoMetric::operator()(const Point& u, const Point& v) const {
    Rational best(0);
    for (const auto& f : family) {
        Rational diff = f(u) - f(v);
        if (diff < 0) diff = -diff;
        best = std::max(best, diff);
    }
    return best;
}

PseudoMetric pseudo_metric(const Family& a) { return {a}; }
PseudoMetric induced_metric(const Family& family) { return {family}; }

bool norm_bounded(const Family& family) {
    return std::all_of(family.begin(), family.end(), [](const StepFunction& f) { return f.jump >= 0 && f.jump <= 1; });
}

Family scaled(Family family, const Rational& factor) {
    for (auto& f : family) f.jump *= factor;
    return family;
}

Family without_level(const Family& family, std::uint32_t n) {
    Family out;
    std::copy_if(family.begin(), family.end(), std::back_inserter(out), [&](const StepFunction& f) { return f.n != n; });
    return out;
}

std::vector<PointPair> gap_chain(const std::vector<GapPairs>& deltas, const PointPair& xy, std::uint32_t n) {
    if (n >= deltas.size()) throw DomainError("gap level " + std::to_string(n) + " is not computed");
    std::vector<PointPair> chain;
    for (std::uint32_t i = 1; i <= n; ++i) {
        auto it = std::find_if(deltas[i].begin(), deltas[i].end(),
                               [&](const PointPair& g) { return g.first <= xy.first && xy.second <= g.second; });
        if (it == deltas[i].end()) throw DomainError("no level-" + std::to_string(i) + " gap contains the pair");
        chain.push_back(*it);
    }
    return chain;
}

namespace {

// Canonical grid box isolating a value set of a function with values {0, 1/i}.
std::optional<std::pair<Rational, Rational>> grid_box(bool has_zero, bool has_top, std::uint32_t i,
                                                      std::uint64_t bound) {
    if (has_zero && has_top) return std::pair{Rational(-1), Rational(2)};
    if (has_top) return std::pair{Rational(0), Rational(2)};
    if (i + 1 > bound) return std::nullopt;
    return std::pair{Rational(-1), Rational(1, static_cast<std::int64_t>(i) + 1)};
}

}  // namespace

DenseSetRecord dense_set(const SpaceDescriptor& k, const std::vector<GapPairs>& deltas, const Family& a,
                         const std::vector<Point>& l_in, std::uint64_t denominator_bound) {
    auto l = sorted_points(l_in);
    DenseSetRecord rec;
    rec.denominator_bound = denominator_bound;
    std::vector<Point> d{min_point(k), max_point(k)};

    std::uint32_t top_level = 0;
    for (const auto& f : a) top_level = std::max(top_level, f.n);
    rec.m.assign(top_level + 1, {});
    for (const auto& f : a) {
        rec.m[f.n].push_back(f.x);
        rec.m[f.n].push_back(f.y);
    }
    for (auto& mn : rec.m) {
        mn = sorted_points(std::move(mn));  // finite sets are closed
        d.insert(d.end(), mn.begin(), mn.end());
    }

    for (std::size_t p = 0; p < a.size(); ++p) {
        const auto& f = a[p];
        auto chain = gap_chain(deltas, {f.x, f.y}, f.n);
        std::vector<Point> cuts;
        for (const auto& g : chain) cuts.push_back(g.first);
        cuts = sorted_points(std::move(cuts));
        std::vector<std::optional<Point>> lowers{std::nullopt}, uppers;
        for (const auto& c : cuts) {
            lowers.emplace_back(c);
            uppers.emplace_back(c);
        }
        uppers.emplace_back(std::nullopt);
        for (const auto& lo : lowers) {
            for (const auto& hi : uppers) {
                if (lo && hi && !(*lo < *hi)) continue;
                BoxSelection sel;
                sel.pair = p;
                sel.lower = lo;
                sel.upper = hi;
                bool available = true;
                for (std::uint32_t i = 1; i <= f.n && available; ++i) {
                    const Point& xi = chain[i - 1].first;
                    bool top = lo && xi <= *lo;
                    bool zero = hi && *hi <= xi;
                    auto box = grid_box(!top, !zero, i, denominator_bound);
                    if (!box) available = false;
                    else sel.box.push_back(*box);
                }
                if (!available) continue;
                auto it = lo ? std::upper_bound(l.begin(), l.end(), *lo) : l.begin();
                if (it == l.end() || (hi && *hi < *it)) {
                    throw std::logic_error("box (" + (lo ? render_point(*lo) : "-inf") + ", " +
                                           (hi ? render_point(*hi) : "+inf") + "] contains no point of L");
                }
                sel.z = *it;
                d.push_back(sel.z);
                rec.boxes.push_back(std::move(sel));
            }
        }
    }
    rec.d = sorted_points(std::move(d));
    return rec;
}

Approximation approximate(const SpaceDescriptor& k, const Point& w, std::uint32_t n, const std::vector<GapPairs>& deltas,
                          const Family& a, const DenseSetRecord& rec) {
    require_valid(k, w);
    if (n == 0) throw DomainError("n must be positive");
    Approximation out;
    auto& trace = out.trace;
    auto metric = pseudo_metric(a);
    auto finish = [&](Point z) {
        out.z = std::move(z);
        out.distance = metric(w, out.z);
        trace.push_back("z = " + render_point(out.z) + ", d_A = " + render_rational(out.distance));
        if (!(out.distance < Rational(1, n))) {
            throw ApproximationFailure("approximation guarantee fails at w = " + render_point(w), trace);
        }
        return out;
    };
    if (std::binary_search(rec.d.begin(), rec.d.end(), w)) {
        trace.push_back("w in D");
        return finish(w);
    }

    std::vector<Point> m{min_point(k), max_point(k)};
    for (std::size_t j = 1; j < rec.m.size() && j <= n; ++j) m.insert(m.end(), rec.m[j].begin(), rec.m[j].end());
    m = sorted_points(std::move(m));
    auto above = std::upper_bound(m.begin(), m.end(), w);
    if (above == m.begin() || above == m.end()) throw DomainError("w lies outside [min K, max K]");
    const Point& u = *std::prev(above);
    const Point& v = *above;
    trace.push_back("gap of M: (" + render_point(u) + ", " + render_point(v) + ")");

    std::optional<std::size_t> pair;
    for (std::size_t p = 0; p < a.size(); ++p) {
        const auto& f = a[p];
        if (f.n <= n && f.x < w && w < f.y && (!pair || f.n > a[*pair].n)) pair = p;
    }
    if (!pair) {
        trace.push_back("k = 0, z = u");
        return finish(u);
    }
    const auto& f = a[*pair];
    out.k = f.n;
    trace.push_back("k = " + std::to_string(f.n) + " via (" + render_point(f.x) + ", " + render_point(f.y) + ")");

    auto chain = gap_chain(deltas, {f.x, f.y}, f.n);
    std::optional<Point> lo, hi;
    for (const auto& g : chain) {
        if (g.first < w && (!lo || *lo < g.first)) lo = g.first;
        if (w <= g.first && (!hi || g.first < *hi)) hi = g.first;
    }
    auto sel = std::find_if(rec.boxes.begin(), rec.boxes.end(), [&](const BoxSelection& b) {
        return b.pair == *pair && b.lower == lo && b.upper == hi;
    });
    if (sel == rec.boxes.end()) {
        trace.push_back("no grid box isolates the values at w");
        throw ApproximationFailure("box unavailable under the denominator bound", trace);
    }
    trace.push_back("box point " + render_point(sel->z));
    if (sel->z <= w) return finish(std::max(u, sel->z));
    return finish(std::min(v, sel->z));
}

NamiokaReport namioka_check(const SpaceDescriptor& k, const Family& family, const std::vector<GapPairs>& deltas,
                            const std::vector<Point>& l, const std::vector<PointPair>& pairs,
                            const std::vector<NamiokaSample>& samples, std::uint32_t max_n,
                            std::uint64_t denominator_bound) {
    NamiokaReport r;
    r.norm_ok = norm_bounded(family);
    r.unseparated = check_separation(family, pairs);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        auto rec = dense_set(k, deltas, samples[s].a, l, denominator_bound);
        for (const auto& w : samples[s].w) {
            for (std::uint32_t n = 1; n <= max_n; ++n) {
                ++r.density_checks;
                try {
                    approximate(k, w, n, deltas, samples[s].a, rec);
                } catch (const ApproximationFailure& e) {
                    r.density_failures.push_back("sample " + std::to_string(s) + ", w = " + render_point(w) +
                                                 ", n = " + std::to_string(n) + ": " + e.what());
                }
            }
        }
    }
    return r;
}

}  // namespace ordfrag
