#include "ordfrag/openpart.hpp"

#include <algorithm>
#include <set>

#include "ordfrag/errors.hpp"

namespace ordfrag {

std::vector<std::size_t> OpenPartition::cell_index(std::size_t node_count) const {
    std::vector<std::size_t> idx(node_count, kNoNode);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (auto x : cells[c]) {
            if (x < node_count) idx[x] = c;
        }
    }
    return idx;
}

OpenPartition canonical_partition(const StagedTree& s, std::vector<std::vector<NodeId>> cells) {
    for (auto& c : cells) {
        std::sort(c.begin(), c.end(), [&](NodeId a, NodeId b) {
            return s.level(a) != s.level(b) ? s.level(a) < s.level(b) : a < b;
        });
    }
    cells.erase(std::remove_if(cells.begin(), cells.end(), [](const auto& c) { return c.empty(); }), cells.end());
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    return {std::move(cells)};
}

OpenPartition singleton_partition(const StagedTree& s) {
    std::vector<std::vector<NodeId>> cells;
    for (NodeId x = 0; x < s.size(); ++x) cells.push_back({x});
    return {std::move(cells)};
}

PartitionOutcome partition_open(const StagedTree& s, const std::optional<RegressiveMap>& witness) {
    PartitionOutcome out;
    auto tops = s.top_nodes();
    if (!s.top_is_limit() || tops.empty()) {
        out.partition = singleton_partition(s);
        return out;
    }
    RegressiveMap pi;
    if (witness) {
        if (auto why = check_regressive(s, tops, *witness); !why.empty()) throw DomainError("witness: " + why);
        if (!witness->injective()) throw NotInjective("witness is not injective");
        pi = *witness;
    } else {
        auto v = is_simple(s, tops);
        if (!v.simple) {
            out.refusal = PartitionRefusal{s.top_level(), v.violator};
            return out;
        }
        pi = v.witness;
    }
    std::map<NodeId, RegressiveMap> fibres;
    for (const auto& [x, w] : pi.image) fibres[w].image[x] = w;
    auto sigma = compose_fibrewise(s, pi, fibres);

    std::vector<bool> used(s.size(), false);
    std::vector<std::vector<NodeId>> cells;
    for (const auto& [x, w] : sigma.image) {
        std::vector<NodeId> cell;
        for (NodeId y = x;; y = s.parent(y)) {
            cell.push_back(y);
            used[y] = true;
            if (y == w) break;
        }
        cells.push_back(std::move(cell));
    }
    for (NodeId x = 0; x < s.size(); ++x) {
        if (!used[x]) cells.push_back({x});
    }
    out.partition = canonical_partition(s, std::move(cells));
    return out;
}

PartitionReport verify_open_partition(const StagedTree& s, const OpenPartition& p) {
    PartitionReport r;
    std::vector<std::size_t> idx(s.size(), kNoNode);
    for (std::size_t c = 0; c < p.cells.size(); ++c) {
        for (auto x : p.cells[c]) {
            if (x >= s.size()) {
                r.violations.push_back({"cover", {x}});
                continue;
            }
            if (idx[x] != kNoNode) r.violations.push_back({"disjoint", {x}});
            idx[x] = c;
        }
    }
    for (NodeId x = 0; x < s.size(); ++x) {
        if (idx[x] == kNoNode) r.violations.push_back({"cover", {x}});
    }
    for (const auto& cell : p.cells) {
        for (std::size_t i = 0; i < cell.size(); ++i) {
            for (std::size_t j = i + 1; j < cell.size(); ++j) {
                NodeId a = cell[i], b = cell[j];
                if (a >= s.size() || b >= s.size()) continue;
                if (!s.comparable(a, b)) {
                    r.violations.push_back({"chain", {a, b}});
                    continue;
                }
                NodeId lo = s.is_ancestor_or_self(a, b) ? a : b;
                NodeId hi = lo == a ? b : a;
                for (NodeId y = s.parent(hi); y != lo; y = s.parent(y)) {
                    if (idx[y] != idx[hi]) {
                        r.violations.push_back({"convex", {lo, hi, y}});
                        break;
                    }
                }
            }
        }
    }
    if (s.top_is_limit()) {
        for (auto y : s.top_nodes()) {
            bool open = false;
            for (NodeId x = y; x != s.root() && !open;) {
                x = s.parent(x);
                if (idx[x] != idx[y]) break;
                open = s.in_pool(s.level(x));
            }
            if (!open) r.violations.push_back({"open", {y}});
        }
    }
    return r;
}

std::vector<OpenPartition> partition_stages(const StagedTree& s, const OpenPartition& p) {
    std::vector<OpenPartition> stages;
    for (std::uint32_t l = 0; l <= s.top_level(); ++l) {
        std::vector<std::vector<NodeId>> cells;
        for (const auto& cell : p.cells) {
            std::vector<NodeId> part;
            for (auto x : cell) {
                if (s.level(x) <= l) part.push_back(x);
            }
            if (!part.empty()) cells.push_back(std::move(part));
        }
        stages.push_back({std::move(cells)});
    }
    return stages;
}

GlueCheck check_glue(const StagedTree& s, const std::vector<OpenPartition>& stages) {
    const std::size_t n = s.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (const auto& st : stages) {
        for (const auto& cell : st.cells) {
            for (auto a : cell) {
                for (auto b : cell) rel[a][b] = true;
            }
        }
    }
    GlueCheck g;
    for (std::size_t a = 0; a < n; ++a) {
        if (!rel[a][a]) g.reflexive = false;
        for (std::size_t b = 0; b < n; ++b) {
            if (rel[a][b] != rel[b][a]) g.symmetric = false;
            if (!rel[a][b]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (rel[b][c] && !rel[a][c]) g.transitive = false;
            }
        }
    }
    return g;
}

std::size_t rank(const StagedTree& s, const OpenPartition& p, NodeId a) {
    auto idx = p.cell_index(s.size());
    std::set<std::size_t> met;
    for (NodeId x = a;; x = s.parent(x)) {
        met.insert(idx[x]);
        if (x == s.root()) break;
    }
    return met.size();
}

std::vector<std::size_t> ranks(const StagedTree& s, const OpenPartition& p) {
    auto idx = p.cell_index(s.size());
    std::vector<std::size_t> r(s.size(), 0);
    // Cells are convex chains, so a node opens a new cell iff its parent lies in another.
    std::vector<NodeId> order(s.size());
    for (NodeId x = 0; x < s.size(); ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return s.level(a) < s.level(b); });
    for (auto x : order) {
        if (x == s.root()) {
            r[x] = 1;
        } else {
            r[x] = r[s.parent(x)] + (idx[x] != idx[s.parent(x)] ? 1 : 0);
        }
    }
    return r;
}

}  // namespace ordfrag
