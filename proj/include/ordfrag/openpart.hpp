#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordfrag/simple.hpp"
#include "ordfrag/staged.hpp"

namespace ordfrag {

/*
 * Partition of the nodes of a staged tree. Each cell is listed root-first
 * and cells are ordered by their lowest member's id.
 */
struct OpenPartition {
    std::vector<std::vector<NodeId>> cells;

    /// cell index of every node; kNoNode for nodes in no cell.
    std::vector<std::size_t> cell_index(std::size_t node_count) const;
    friend bool operator==(const OpenPartition&, const OpenPartition&) = default;
};

/// Sorts members root-first and cells by lowest id.
OpenPartition canonical_partition(const StagedTree& s, std::vector<std::vector<NodeId>> cells);

OpenPartition singleton_partition(const StagedTree& s);

struct PartitionRefusal {
    std::uint32_t level = 0;
    HallViolator violator;
};

struct PartitionOutcome {
    std::optional<OpenPartition> partition;
    std::optional<PartitionRefusal> refusal;
    bool accepted() const { return partition.has_value(); }
};

/*
 * Successor levels contribute singletons; at a limit top level the cells
 * become [sigma(x), x] for the disjoint-segment map sigma built from the
 * given witness (or from a fresh matching when none is given).
 */
PartitionOutcome partition_open(const StagedTree& s, const std::optional<RegressiveMap>& witness = std::nullopt);

struct PartitionViolation {
    std::string kind;  // disjoint, cover, chain, convex, open
    std::vector<NodeId> nodes;
};

struct PartitionReport {
    std::vector<PartitionViolation> violations;
    bool ok() const { return violations.empty(); }
};

/*
 * Exhaustive check. Openness at a limit top node y requires a strict
 * ancestor x at a pool level with the closed segment [x, y] inside y's cell.
 */
PartitionReport verify_open_partition(const StagedTree& s, const OpenPartition& p);

/// Restrictions of p to the nodes of level <= l, for l = 0..top.
std::vector<OpenPartition> partition_stages(const StagedTree& s, const OpenPartition& p);

struct GlueCheck {
    bool reflexive = true;
    bool symmetric = true;
    bool transitive = true;
    bool ok() const { return reflexive && symmetric && transitive; }
};

/// x ~ y when some stage puts them in one cell; checked exhaustively.
GlueCheck check_glue(const StagedTree& s, const std::vector<OpenPartition>& stages);

/// Number of cells meeting the branch from the root to a.
std::size_t rank(const StagedTree& s, const OpenPartition& p, NodeId a);
std::vector<std::size_t> ranks(const StagedTree& s, const OpenPartition& p);

}  // namespace ordfrag
