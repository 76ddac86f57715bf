#include "ordfrag/staged.hpp"

#include <algorithm>
#include <string>

#include "ordfrag/errors.hpp"

namespace ordfrag {

StagedTree::StagedTree(std::vector<NodeId> parent, std::uint32_t top_level, std::vector<std::uint32_t> pool,
                       bool top_is_limit)
    : parent_(std::move(parent)), top_level_(top_level), top_is_limit_(top_is_limit) {
    const auto n = parent_.size();
    if (n == 0) throw DomainError("staged tree needs at least one node");
    children_.assign(n, {});
    std::size_t roots = 0;
    for (NodeId x = 0; x < n; ++x) {
        if (parent_[x] == kNoNode) {
            root_ = x;
            ++roots;
        } else if (parent_[x] >= n || parent_[x] == x) {
            throw DomainError("staged tree node " + std::to_string(x) + " has an invalid parent");
        } else {
            children_[parent_[x]].push_back(x);
        }
    }
    if (roots != 1) throw DomainError("staged tree must have exactly one root");

    // Depth-first numbering also detects cycles (unreached nodes).
    level_.assign(n, 0);
    enter_.assign(n, 0);
    exit_.assign(n, 0);
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    std::size_t clock = 0, reached = 1;
    enter_[root_] = clock++;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next < children_[x].size()) {
            auto c = children_[x][next++];
            level_[c] = level_[x] + 1;
            enter_[c] = clock++;
            ++reached;
            stack.emplace_back(c, 0);
        } else {
            exit_[x] = clock++;
            stack.pop_back();
        }
    }
    if (reached != n) throw DomainError("staged tree parent map contains a cycle");
    for (NodeId x = 0; x < n; ++x) {
        if (level_[x] > top_level_) throw DomainError("staged tree node above the top level");
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (auto l : pool) {
        if (l >= top_level_) throw DomainError("pool level " + std::to_string(l) + " is not below the top level");
    }
    pool_ = std::move(pool);
}

void StagedTree::set_payload(std::vector<ChainInterval> payload, std::uint64_t chain_size) {
    if (payload.size() != size()) throw DomainError("payload size does not match the tree");
    for (NodeId x = 0; x < size(); ++x) {
        const auto& a = payload[x];
        if (a.lo >= a.hi || a.hi >= chain_size) throw DomainError("payload interval must be non-trivial and inside the chain");
        if (parent_[x] != kNoNode) {
            const auto& p = payload[parent_[x]];
            if (a.lo < p.lo || a.hi > p.hi) throw DomainError("payload interval not contained in its parent");
        }
    }
    // Distinct nodes of one level meet in at most one point.
    std::vector<std::vector<NodeId>> by_level(top_level_ + 1);
    for (NodeId x = 0; x < size(); ++x) by_level[level_[x]].push_back(x);
    for (auto& row : by_level) {
        std::sort(row.begin(), row.end(), [&](NodeId a, NodeId b) { return payload[a].lo < payload[b].lo; });
        for (std::size_t i = 1; i < row.size(); ++i) {
            if (payload[row[i]].lo < payload[row[i - 1]].hi) {
                throw DomainError("payload intervals of one level overlap non-trivially");
            }
        }
    }
    payload_ = std::move(payload);
    chain_size_ = chain_size;
}

void StagedTree::set_chain_points(std::vector<Point> points) {
    if (points.size() != chain_size_) throw DomainError("chain point labels do not match the chain size");
    chain_points_ = std::move(points);
}

void StagedTree::set_source_ids(std::vector<std::size_t> ids) {
    if (ids.size() != size()) throw DomainError("source ids do not match the tree");
    source_ids_ = std::move(ids);
}

bool StagedTree::in_pool(std::uint32_t level) const {
    return std::binary_search(pool_.begin(), pool_.end(), level);
}

NodeId StagedTree::ancestor_at_level(NodeId x, std::uint32_t level) const {
    if (level > level_[x]) return kNoNode;
    while (level_[x] > level) x = parent_[x];
    return x;
}

bool StagedTree::is_ancestor_or_self(NodeId a, NodeId b) const {
    return enter_[a] <= enter_[b] && exit_[b] <= exit_[a];
}

NodeId StagedTree::meet(NodeId a, NodeId b) const {
    while (!is_ancestor_or_self(a, b)) a = parent_[a];
    return a;
}

std::vector<NodeId> StagedTree::level_nodes(std::uint32_t level) const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < size(); ++x) {
        if (level_[x] == level) out.push_back(x);
    }
    return out;
}

std::vector<NodeId> StagedTree::pool_nodes() const {
    std::vector<NodeId> out;
    for (NodeId x = 0; x < size(); ++x) {
        if (in_pool(level_[x])) out.push_back(x);
    }
    return out;
}

std::vector<NodeId> StagedTree::pool_ancestors(NodeId x) const {
    std::vector<NodeId> out;
    for (auto l : pool_) {
        if (l >= level_[x]) break;
        out.push_back(ancestor_at_level(x, l));
    }
    return out;
}

StagedTree StagedTree::with_pool(std::vector<std::uint32_t> pool) const {
    StagedTree copy(parent_, top_level_, std::move(pool), top_is_limit_);
    if (payload_) copy.set_payload(*payload_, chain_size_);
    if (!chain_points_.empty()) copy.set_chain_points(chain_points_);
    if (!source_ids_.empty()) copy.set_source_ids(source_ids_);
    return copy;
}

NodeSet make_node_set(const StagedTree& s, std::vector<NodeId> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto x : members) {
        if (x >= s.size() || s.level(x) != s.top_level()) {
            throw DomainError("node " + std::to_string(x) + " is not at the top level");
        }
    }
    return members;
}

}  // namespace ordfrag
