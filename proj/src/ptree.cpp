#include "ordfrag/ptree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ordfrag/errors.hpp"

namespace ordfrag {

namespace {

bool has_at_least_three(const SpaceDescriptor& k, const ClosedInterval& i) {
    auto n = point_count(k, i);
    return !n || *n >= 3;
}

std::string id_str(std::size_t id) { return "#" + std::to_string(id); }

}  // namespace

PartitionTree build_tree(const SpaceDescriptor& k, std::size_t budget, const SplitRule& rule) {
    if (budget < 1) throw DomainError("tree budget must be at least 1");
    auto whole = whole_space(k);
    auto n = point_count(k, whole);
    if (n && *n < 2) throw DomainError("a partition tree needs a space with at least two points");

    PartitionTree t;
    t.space = k;
    t.budget = budget;
    t.nodes.push_back(TreeNode{0, whole, Ordinal{}, std::nullopt, {}});
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        auto id = queue.front();
        queue.pop_front();
        const auto interval = t.nodes[id].interval;
        if (!has_at_least_three(k, interval)) continue;
        if (t.nodes.size() + 2 > budget) break;
        auto w = rule(k, interval);
        require_valid(k, w);
        if (!(interval.lo < w && w < interval.hi)) {
            throw DomainError("split rule returned " + render_point(w) + " outside the open interval");
        }
        auto level = successor(t.nodes[id].level);
        for (auto child : {ClosedInterval{interval.lo, w}, ClosedInterval{w, interval.hi}}) {
            auto cid = t.nodes.size();
            t.nodes.push_back(TreeNode{cid, child, level, id, {}});
            t.nodes[id].children.push_back(cid);
            queue.push_back(cid);
        }
    }
    return t;
}

AdmissibilityReport verify_admissible(const PartitionTree& t) {
    AdmissibilityReport report;
    auto fail = [&](std::string clause, std::vector<std::size_t> ids, std::string detail) {
        if (report.violations.size() < 32) report.violations.push_back({std::move(clause), std::move(ids), std::move(detail)});
    };
    const auto& k = t.space;
    const auto n = t.nodes.size();
    if (n == 0) {
        fail("clause-3", {}, "tree has no root");
        return report;
    }

    // Structure: ids, parent/children consistency, a single root.
    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = t.nodes[i];
        if (a.id != i) fail("structure", {i}, "node id does not match its position");
        if (!a.parent) {
            ++roots;
            continue;
        }
        if (*a.parent >= n) {
            fail("structure", {i}, "dangling parent");
            continue;
        }
        const auto& sib = t.nodes[*a.parent].children;
        if (std::find(sib.begin(), sib.end(), i) == sib.end()) fail("structure", {*a.parent, i}, "parent does not list child");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto c : t.nodes[i].children) {
            if (c >= n || t.nodes[c].parent != i) fail("structure", {i}, "child does not point back to parent");
        }
    }
    if (roots != 1 || t.nodes[0].parent) {
        fail("clause-3", {0}, "node 0 must be the unique root");
        return report;
    }
    if (!report.ok()) return report;

    // Euler tour for the tree order; also detects cycles.
    std::vector<std::size_t> enter(n, 0), exit(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    std::size_t clock = 0;
    enter[0] = clock++;
    seen[0] = true;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next < t.nodes[x].children.size()) {
            auto c = t.nodes[x].children[next++];
            if (seen[c]) {
                fail("structure", {c}, "node reached twice");
                return report;
            }
            seen[c] = true;
            enter[c] = clock++;
            stack.emplace_back(c, 0);
        } else {
            exit[x] = clock++;
            stack.pop_back();
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
            fail("structure", {i}, "node unreachable from the root");
            return report;
        }
    }
    auto below = [&](std::size_t a, std::size_t b) { return enter[a] <= enter[b] && exit[b] <= exit[a]; };

    // Clause (1): non-trivial closed intervals.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = t.nodes[i];
        if (!is_valid(k, a.interval.lo) || !is_valid(k, a.interval.hi) || !(a.interval.lo < a.interval.hi)) {
            fail("clause-1", {i}, "interval is not a non-trivial closed interval of the space");
        }
    }
    if (!report.ok()) return report;

    // Clause (3).
    const auto& root = t.nodes[0];
    if (!root.level.is_zero() || root.interval != whole_space(k)) {
        fail("clause-3", {0}, "root must be the whole space at level 0");
    }

    // Levels: successor edges add one; limit levels sit above every ancestor.
    for (std::size_t i = 1; i < n; ++i) {
        const auto& a = t.nodes[i];
        const auto& p = t.nodes[*a.parent];
        auto c = classify(a.level);
        if (c.kind == OrdinalKind::successor) {
            if (*c.predecessor != p.level) fail("levels", {*a.parent, i}, "successor level must exceed the parent's by one");
        } else if (c.kind == OrdinalKind::limit) {
            if (!(p.level < a.level)) fail("clause-6", {*a.parent, i}, "limit node below its branch");
        } else {
            fail("clause-3", {i}, "only the root lives at level 0");
        }
    }

    // Rank endpoints so the pairwise checks compare integers.
    std::vector<Point> pts;
    pts.reserve(2 * n);
    for (const auto& a : t.nodes) {
        pts.push_back(a.interval.lo);
        pts.push_back(a.interval.hi);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto rank_of = [&](const Point& p) {
        return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
    };
    std::vector<std::size_t> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = rank_of(t.nodes[i].interval.lo);
        hi[i] = rank_of(t.nodes[i].interval.hi);
    }

    // Clause (2) and its two overlap consequences, exhaustively over pairs.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            const bool contained = lo[a] <= lo[b] && hi[b] <= hi[a];
            if (below(a, b) != contained) {
                fail("clause-2", {a, b}, "tree order disagrees with reverse inclusion");
            }
            if (a < b) {
                const bool trivial = std::max(lo[a], lo[b]) >= std::min(hi[a], hi[b]);
                if (t.nodes[a].level == t.nodes[b].level && !trivial) {
                    fail("level-overlap", {a, b}, "distinct nodes of one level overlap non-trivially");
                }
                if (!trivial && !below(a, b) && !below(b, a)) {
                    fail("overlap-order", {a, b}, "non-trivially intersecting nodes are incomparable");
                }
            }
        }
    }

    // Clauses (4) and (5).
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = t.nodes[i];
        auto count = point_count(k, a.interval);
        if (count && *count == 2) {
            if (!a.children.empty()) fail("clause-4", {i}, "two-point node has successors");
            continue;
        }
        if (a.children.empty()) continue;  // frontier
        if (a.children.size() != 2) {
            fail("clause-5", {i}, "node must have exactly two immediate successors");
            continue;
        }
        auto b = a.children[0], c = a.children[1];
        if (t.nodes[c].interval.lo < t.nodes[b].interval.lo) std::swap(b, c);
        const auto& ib = t.nodes[b].interval;
        const auto& ic = t.nodes[c].interval;
        if (!(a.interval.lo == ib.lo && ib.lo < ib.hi && ib.hi == ic.lo && ic.lo < ic.hi && ic.hi == a.interval.hi)) {
            fail("clause-5", {i, b, c}, "successors do not split the node at a shared endpoint");
        }
    }

    // Clause (6): distinct limit nodes of one level come from distinct branches.
    std::map<Ordinal, std::vector<std::size_t>> limit_levels;
    for (std::size_t i = 0; i < n; ++i) {
        if (classify(t.nodes[i].level).kind == OrdinalKind::limit) limit_levels[t.nodes[i].level].push_back(i);
    }
    for (const auto& [level, ids] : limit_levels) {
        for (std::size_t x = 0; x < ids.size(); ++x) {
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                if (t.nodes[ids[x]].parent == t.nodes[ids[y]].parent) {
                    fail("clause-6", {ids[x], ids[y]}, "two limit nodes share one branch");
                }
            }
        }
    }
    return report;
}

std::vector<Point> endpoints(const PartitionTree& t) {
    std::set<Point> out;
    for (const auto& a : t.nodes) {
        out.insert(a.interval.lo);
        out.insert(a.interval.hi);
    }
    return {out.begin(), out.end()};
}

SeparatingPair find_separating_pair(const PartitionTree& t, const Point& u, const Point& v) {
    require_valid(t.space, u);
    require_valid(t.space, v);
    if (!(u < v)) throw DomainError("find_separating_pair needs u < v");
    auto contains = [](const ClosedInterval& i, const Point& p) { return !(p < i.lo) && !(i.hi < p); };

    Point a = u;
    for (int round = 0; round < 2; ++round) {
        // Greatest node containing both a and v.
        std::size_t id = 0;
        for (;;) {
            const auto& node = t.nodes[id];
            std::optional<std::size_t> next;
            for (auto c : node.children) {
                if (contains(t.nodes[c].interval, a) && contains(t.nodes[c].interval, v)) next = c;
            }
            if (!next) break;
            id = *next;
        }
        const auto& node = t.nodes[id];
        auto count = point_count(t.space, node.interval);
        if (count && *count == 2) return {node.interval.lo, node.interval.hi};
        if (node.children.empty()) {
            throw InsufficientMaterialization("node " + id_str(id) + " must be expanded to separate " +
                                              render_point(u) + " and " + render_point(v));
        }
        const auto& split = t.nodes[node.children[0]].interval.hi == t.nodes[node.children[1]].interval.lo
                                ? t.nodes[node.children[0]].interval.hi
                                : t.nodes[node.children[1]].interval.hi;
        if (a == node.interval.lo) return {a, split};
        if (v == node.interval.hi) return {split, v};
        a = split;
    }
    // Second round always starts at a node whose minimum is a.
    throw InsufficientMaterialization("separation did not terminate");
}

ChainOrderReport chain_order_types(const PartitionTree& t, const std::vector<std::size_t>& chain) {
    std::vector<std::size_t> s = chain;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto ancestor_or_self = [&](std::size_t a, std::size_t b) {
        for (std::optional<std::size_t> x = b; x; x = t.nodes[*x].parent) {
            if (*x == a) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (!ancestor_or_self(s[i], s[j]) && !ancestor_or_self(s[j], s[i])) {
                throw DomainError("chain_order_types: nodes " + id_str(s[i]) + " and " + id_str(s[j]) + " are incomparable");
            }
        }
    }
    std::sort(s.begin(), s.end(), [&](std::size_t a, std::size_t b) { return t.nodes[a].level < t.nodes[b].level; });

    ChainOrderReport r;
    r.chain_size = s.size();
    std::set<Point> mins, maxes;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto& cur = t.nodes[s[j]].interval;
        mins.insert(cur.lo);
        maxes.insert(cur.hi);
        bool in_f = true, in_g = true;
        for (std::size_t i = 0; i < j; ++i) {
            const auto& prev = t.nodes[s[i]].interval;
            if (!(prev.lo < cur.lo)) in_f = false;
            if (!(cur.hi < prev.hi)) in_g = false;
            if (cur.lo < prev.lo) r.mins_increasing = false;
            if (prev.hi < cur.hi) r.maxes_decreasing = false;
        }
        if (in_f) ++r.min_moves;
        if (in_g) ++r.max_moves;
        if (!in_f && !in_g) r.cover = false;
    }
    r.distinct_mins = mins.size();
    r.distinct_maxes = maxes.size();
    return r;
}

StagedTree to_staged(const PartitionTree& t, std::uint32_t m, std::vector<std::uint32_t> pool, bool top_is_limit) {
    std::vector<std::size_t> kept;
    std::map<std::size_t, NodeId> index;
    for (const auto& a : t.nodes) {
        if (!a.level.is_finite() || a.level.finite_part() > m) continue;
        if (a.level.finite_part() < m && a.children.empty() && has_at_least_three(t.space, a.interval)) {
            throw InsufficientMaterialization("level " + std::to_string(a.level.finite_part() + 1) +
                                              " is not fully materialized (node " + id_str(a.id) + ")");
        }
        index[a.id] = kept.size();
        kept.push_back(a.id);
    }
    std::vector<NodeId> parent(kept.size(), kNoNode);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (auto p = t.nodes[kept[i]].parent) parent[i] = index.at(*p);
    }
    StagedTree s(std::move(parent), m, std::move(pool), top_is_limit);

    std::vector<Point> chain;
    for (auto id : kept) {
        chain.push_back(t.nodes[id].interval.lo);
        chain.push_back(t.nodes[id].interval.hi);
    }
    std::sort(chain.begin(), chain.end());
    chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
    auto rank_of = [&](const Point& p) {
        return static_cast<std::uint64_t>(std::lower_bound(chain.begin(), chain.end(), p) - chain.begin());
    };
    std::vector<ChainInterval> payload;
    for (auto id : kept) payload.push_back({rank_of(t.nodes[id].interval.lo), rank_of(t.nodes[id].interval.hi)});
    s.set_payload(std::move(payload), chain.size());
    s.set_chain_points(std::move(chain));
    s.set_source_ids(std::move(kept));
    return s;
}

std::uint32_t complete_depth(const PartitionTree& t) {
    std::optional<std::uint64_t> deepest, frontier;
    for (const auto& a : t.nodes) {
        if (!a.level.is_finite()) continue;
        auto l = a.level.finite_part();
        if (!deepest || l > *deepest) deepest = l;
        if (a.children.empty() && has_at_least_three(t.space, a.interval) && (!frontier || l < *frontier)) frontier = l;
    }
    return static_cast<std::uint32_t>(frontier ? *frontier : deepest.value_or(0));
}

std::vector<std::size_t> rightmost_branch(const PartitionTree& t) {
    std::vector<std::size_t> out{0};
    while (!t.nodes[out.back()].children.empty()) {
        const auto& ch = t.nodes[out.back()].children;
        auto best = ch[0];
        for (auto c : ch) {
            if (t.nodes[best].interval.hi < t.nodes[c].interval.hi ||
                (t.nodes[best].interval.hi == t.nodes[c].interval.hi && t.nodes[best].interval.lo < t.nodes[c].interval.lo)) {
                best = c;
            }
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace ordfrag
