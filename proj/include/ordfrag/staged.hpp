#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ordfrag/space.hpp"

namespace ordfrag {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// Closed interval [lo, hi] of the chain 0 < 1 < ... < n-1.
struct ChainInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    friend bool operator==(const ChainInterval&, const ChainInterval&) = default;
};

/*
 * Finite rooted tree with one designated top level m and a pool of lower
 * levels. The top level stands in for a limit level of an infinite tree and
 * the pool for the levels of a cofinal sequence below it.
 *
 * Node levels are depths, so levels increase by one along every edge. The
 * optional payload assigns each node a closed interval of a finite chain.
 */
class StagedTree {
public:
    StagedTree() = default;

    /// Validates and builds; throws DomainError on any invariant violation.
    StagedTree(std::vector<NodeId> parent, std::uint32_t top_level, std::vector<std::uint32_t> pool,
               bool top_is_limit = true);

    /// Attaches a payload over the chain 0..chain_size-1; checked against the tree.
    void set_payload(std::vector<ChainInterval> payload, std::uint64_t chain_size);
    /// Optional labels of the payload chain points in the source space.
    void set_chain_points(std::vector<Point> points);
    void set_source_ids(std::vector<std::size_t> ids);

    std::size_t size() const { return parent_.size(); }
    NodeId root() const { return root_; }
    NodeId parent(NodeId x) const { return parent_[x]; }
    const std::vector<NodeId>& parents() const { return parent_; }
    std::uint32_t level(NodeId x) const { return level_[x]; }
    const std::vector<NodeId>& children(NodeId x) const { return children_[x]; }
    std::uint32_t top_level() const { return top_level_; }
    const std::vector<std::uint32_t>& pool() const { return pool_; }
    bool in_pool(std::uint32_t level) const;
    bool top_is_limit() const { return top_is_limit_; }

    bool has_payload() const { return payload_.has_value(); }
    const ChainInterval& interval(NodeId x) const { return (*payload_)[x]; }
    const std::vector<ChainInterval>& payload() const { return *payload_; }
    std::uint64_t chain_size() const { return chain_size_; }
    const std::vector<Point>& chain_points() const { return chain_points_; }
    const std::vector<std::size_t>& source_ids() const { return source_ids_; }

    /// Ancestor (or self) of x at the given level; kNoNode if level > level(x).
    NodeId ancestor_at_level(NodeId x, std::uint32_t level) const;
    /// a <= b in the tree order (a is an ancestor of b or equal to it).
    bool is_ancestor_or_self(NodeId a, NodeId b) const;
    bool comparable(NodeId a, NodeId b) const { return is_ancestor_or_self(a, b) || is_ancestor_or_self(b, a); }
    /// Deepest common ancestor.
    NodeId meet(NodeId a, NodeId b) const;

    std::vector<NodeId> level_nodes(std::uint32_t level) const;
    std::vector<NodeId> top_nodes() const { return level_nodes(top_level_); }
    /// All nodes on pool levels, in id order.
    std::vector<NodeId> pool_nodes() const;
    /// Ancestors of x at pool levels, lowest level first.
    std::vector<NodeId> pool_ancestors(NodeId x) const;

    /// Copy with a different pool.
    StagedTree with_pool(std::vector<std::uint32_t> pool) const;

private:
    std::vector<NodeId> parent_;
    std::vector<std::uint32_t> level_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::size_t> enter_, exit_;
    NodeId root_ = 0;
    std::uint32_t top_level_ = 0;
    std::vector<std::uint32_t> pool_;
    bool top_is_limit_ = true;
    std::optional<std::vector<ChainInterval>> payload_;
    std::uint64_t chain_size_ = 0;
    std::vector<Point> chain_points_;
    std::vector<std::size_t> source_ids_;
};

/// Sorted set of top-level nodes.
using NodeSet = std::vector<NodeId>;

/// Sorts, deduplicates and checks that every member is at the top level.
NodeSet make_node_set(const StagedTree& s, std::vector<NodeId> members);

}  // namespace ordfrag
