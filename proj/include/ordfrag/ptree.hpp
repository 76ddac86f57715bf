#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordfrag/ordinal.hpp"
#include "ordfrag/space.hpp"
#include "ordfrag/staged.hpp"

namespace ordfrag {

struct TreeNode {
    std::size_t id = 0;
    ClosedInterval interval;
    Ordinal level;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
};

/*
 * Materialized portion of an admissible partition tree of a compact linear
 * order. Nodes are closed intervals ordered by reverse inclusion; the root
 * is the whole space. A node with three or more points and no children is
 * an unexpanded frontier node.
 */
struct PartitionTree {
    SpaceDescriptor space;
    std::vector<TreeNode> nodes;
    std::size_t budget = 0;

    const TreeNode& node(std::size_t id) const { return nodes.at(id); }
    std::size_t size() const { return nodes.size(); }
};

using SplitRule = std::function<Point(const SpaceDescriptor&, const ClosedInterval&)>;

/// Breadth-first materialization of at most `budget` nodes.
PartitionTree build_tree(const SpaceDescriptor& k, std::size_t budget, const SplitRule& rule = canonical_split);

struct Violation {
    std::string clause;
    std::vector<std::size_t> nodes;
    std::string detail;
};

struct AdmissibilityReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

AdmissibilityReport verify_admissible(const PartitionTree& t);

/// Endpoints of all materialized nodes, sorted.
std::vector<Point> endpoints(const PartitionTree& t);

struct SeparatingPair {
    Point x;
    Point y;
};

/// x, y endpoints of the tree with u <= x < y <= v.
SeparatingPair find_separating_pair(const PartitionTree& t, const Point& u, const Point& v);

struct ChainOrderReport {
    bool mins_increasing = true;   // {min a} is well ordered along the chain
    bool maxes_decreasing = true;  // {max a} is conversely well ordered
    std::size_t chain_size = 0;    // |E|
    std::size_t min_moves = 0;     // |F|
    std::size_t max_moves = 0;     // |G|
    std::size_t distinct_mins = 0;
    std::size_t distinct_maxes = 0;
    bool cover = true;  // E = F u G
    bool ok() const {
        return mins_increasing && maxes_decreasing && cover && distinct_mins == min_moves &&
               distinct_maxes == max_moves;
    }
};

/// Order-type checks for a totally ordered set of nodes.
ChainOrderReport chain_order_types(const PartitionTree& t, const std::vector<std::size_t>& chain);

/// Finite truncation of levels 0..m with the given pool.
StagedTree to_staged(const PartitionTree& t, std::uint32_t m, std::vector<std::uint32_t> pool,
                     bool top_is_limit = true);

/// Largest m such that every node below level m with three or more points is expanded.
std::uint32_t complete_depth(const PartitionTree& t);

/// Rightmost branch, root first.
std::vector<std::size_t> rightmost_branch(const PartitionTree& t);

}  // namespace ordfrag
