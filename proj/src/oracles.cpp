#include "ordfrag/oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ordfrag/errors.hpp"

namespace ordfrag::oracle {

namespace {

bool in_pool(const StagedTree& s, std::uint32_t level) {
    const auto& p = s.pool();
    return std::find(p.begin(), p.end(), level) != p.end();
}

std::vector<NodeId> path_to_root(const StagedTree& s, NodeId x) {
    std::vector<NodeId> out{x};
    while (s.parents()[out.back()] != kNoNode) out.push_back(s.parents()[out.back()]);
    return out;
}

std::vector<NodeId> children_of(const StagedTree& s, NodeId x) {
    std::vector<NodeId> out;
    for (NodeId y = 0; y < s.size(); ++y) {
        if (s.parents()[y] == x) out.push_back(y);
    }
    return out;
}

}  // namespace

std::vector<NodeId> pooled_ancestors(const StagedTree& s, NodeId x) {
    std::vector<NodeId> out;
    auto path = path_to_root(s, x);
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (in_pool(s, static_cast<std::uint32_t>(path.size() - 1 - i))) out.push_back(path[i]);
    }
    return out;
}

bool sdr_exists(const StagedTree& s, const NodeSet& h) {
    std::vector<std::vector<NodeId>> options;
    for (auto x : h) options.push_back(pooled_ancestors(s, x));
    std::set<NodeId> used;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == h.size()) return true;
        for (auto a : options[i]) {
            if (used.count(a)) continue;
            used.insert(a);
            if (go(i + 1)) return true;
            used.erase(a);
        }
        return false;
    };
    return go(0);
}

std::optional<std::vector<NodeId>> disjoint_segments(const StagedTree& s, const NodeSet& h) {
    std::vector<std::vector<NodeId>> options;
    for (auto x : h) options.push_back(pooled_ancestors(s, x));
    std::vector<std::set<NodeId>> segment(h.size());
    std::vector<NodeId> choice(h.size(), kNoNode);
    std::multiset<NodeId> covered;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == h.size()) return true;
        auto path = path_to_root(s, h[i]);
        for (auto a : options[i]) {
            std::vector<NodeId> seg;
            for (auto y : path) {
                seg.push_back(y);
                if (y == a) break;
            }
            if (std::any_of(seg.begin(), seg.end(), [&](NodeId y) { return covered.count(y) > 0; })) continue;
            for (auto y : seg) covered.insert(y);
            choice[i] = a;
            if (go(i + 1)) return true;
            for (auto y : seg) covered.erase(covered.find(y));
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return choice;
}

std::size_t chain_partition_count(const StagedTree& s) {
    std::size_t total = 1;
    for (NodeId x = 0; x < s.size(); ++x) total *= children_of(s, x).size() + 1;
    return total;
}

std::size_t open_partitions(const StagedTree& s, bool first_only) {
    const auto n = s.size();
    std::vector<std::vector<NodeId>> kids(n);
    for (NodeId x = 0; x < n; ++x) kids[x] = children_of(s, x);
    std::vector<std::uint32_t> depth(n);
    for (NodeId x = 0; x < n; ++x) depth[x] = static_cast<std::uint32_t>(path_to_root(s, x).size() - 1);
    std::vector<NodeId> tops;
    for (NodeId x = 0; x < n; ++x) {
        if (depth[x] == s.top_level()) tops.push_back(x);
    }
    // keep[x]: the child continuing x's cell, or kNoNode.
    std::vector<NodeId> keep(n, kNoNode);
    auto open = [&] {
        if (!s.top_is_limit()) return true;
        for (auto y : tops) {
            bool ok = false;
            for (NodeId c = y; s.parents()[c] != kNoNode;) {
                NodeId p = s.parents()[c];
                if (keep[p] != c) break;
                if (in_pool(s, depth[p])) {
                    ok = true;
                    break;
                }
                c = p;
            }
            if (!ok) return false;
        }
        return true;
    };
    std::size_t found = 0;
    std::function<bool(NodeId)> go = [&](NodeId x) {
        if (x == n) {
            if (open()) ++found;
            return first_only && found > 0;
        }
        keep[x] = kNoNode;
        if (go(x + 1)) return true;
        for (auto c : kids[x]) {
            keep[x] = c;
            if (go(x + 1)) return true;
        }
        keep[x] = kNoNode;
        return false;
    };
    go(0);
    return found;
}

std::size_t open_set_partitions(const StagedTree& s) {
    const auto n = s.size();
    if (n > 10) throw DomainError("set-partition enumeration is limited to 10 nodes");
    std::vector<std::vector<NodeId>> up(n);
    for (NodeId x = 0; x < n; ++x) up[x] = path_to_root(s, x);
    auto below = [&](NodeId a, NodeId b) {  // a is an ancestor of b or equal
        return std::find(up[b].begin(), up[b].end(), a) != up[b].end();
    };
    std::vector<std::size_t> block(n, 0);
    std::size_t found = 0;
    auto valid = [&] {
        for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = 0; b < n; ++b) {
                if (a == b || block[a] != block[b]) continue;
                if (!below(a, b) && !below(b, a)) return false;
                if (below(a, b)) {
                    for (auto y : up[b]) {
                        if (y == a) break;
                        if (block[y] != block[b]) return false;
                    }
                }
            }
        }
        if (!s.top_is_limit()) return true;
        for (NodeId y = 0; y < n; ++y) {
            if (up[y].size() - 1 != s.top_level()) continue;
            bool ok = false;
            for (std::size_t i = 1; i < up[y].size(); ++i) {
                if (block[up[y][i]] != block[y]) break;
                if (in_pool(s, static_cast<std::uint32_t>(up[y].size() - 1 - i))) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    };
    std::function<void(NodeId, std::size_t)> go = [&](NodeId x, std::size_t blocks) {
        if (x == n) {
            if (valid()) ++found;
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            block[x] = b;
            go(x + 1, std::max(blocks, b + 1));
        }
    };
    go(0, 0);
    return found;
}

}  // namespace ordfrag::oracle
