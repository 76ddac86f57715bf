#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordfrag/staged.hpp"

/*
 * Exhaustive reference searches. They walk parent pointers directly and
 * share no code with the matching, composition or partition algorithms they
 * are used to check, so they stay independent. Exponential; desk scale only.
 */
namespace ordfrag::oracle {

/// Strict ancestors of x at pool levels, found by walking parents.
std::vector<NodeId> pooled_ancestors(const StagedTree& s, NodeId x);

/// Backtracking search for distinct pooled ancestors of every member.
bool sdr_exists(const StagedTree& s, const NodeSet& h);

/// Backtracking search for pooled ancestors sigma(x) with pairwise disjoint segments [sigma(x), x].
std::optional<std::vector<NodeId>> disjoint_segments(const StagedTree& s, const NodeSet& h);

/*
 * Every partition into chain-convex cells arises by letting each node keep
 * at most one child in its cell. Returns the number of candidates that are
 * open at a limit top (a pool-level strict ancestor x with [x, y] in y's
 * cell), stopping at the first when `first_only` is set.
 */
std::size_t open_partitions(const StagedTree& s, bool first_only = true);

/// Same count by enumerating every set partition (restricted growth strings). Needs size <= 10.
std::size_t open_set_partitions(const StagedTree& s);

/// Number of candidate chain-convex partitions, i.e. the product of (children + 1).
std::size_t chain_partition_count(const StagedTree& s);

}  // namespace ordfrag::oracle
