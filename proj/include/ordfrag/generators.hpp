#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ordfrag/space.hpp"
#include "ordfrag/staged.hpp"

namespace ordfrag {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] by reduction of one 64-bit draw, identical across standard libraries.
std::uint64_t draw(Rng& rng, std::uint64_t lo, std::uint64_t hi);
bool coin(Rng& rng);

/// Applies a seeded permutation to node ids, carrying payload, chain points and source ids along.
StagedTree shuffled(const StagedTree& s, Rng& rng);

/// Parent vector of the full binary tree over levels 0..top in breadth-first order.
std::vector<NodeId> full_binary_parents(std::uint32_t top);

/// Full binary tree, levels 0..top, with the given pool and no payload.
StagedTree full_binary(std::uint32_t top, std::vector<std::uint32_t> pool);

/*
 * Full binary tree over levels 0..depth-1 with a payload on the split chain
 * of 2^(depth-1) pairs: top i gets [2i, 2i+1], so every node's interval ends
 * at the "+" copy of its last top and starts at the "-" copy of its first.
 * The pool is every level below the top, or every level below the top's
 * parent level when `exclude_parent_level` is set.
 */
StagedTree split_miniature(std::uint32_t depth, bool exclude_parent_level, Rng* rng = nullptr);

/// Payload from a depth-first walk: lo on entry, hi on exit, over a chain of 2 * size points.
void attach_walk_payload(StagedTree& s);

/*
 * Spine s_0 .. s_{teeth-1} with one pendant path per spine node up to level
 * teeth + room; divergences sit at levels <= teeth - 2 and the pool is every
 * level from teeth - 1 up to the top's parent.
 */
StagedTree comb(std::uint32_t teeth, std::uint32_t room = 2);

/// Handle of `handle` edges, then `bristles` disjoint paths of length `length` to the top.
StagedTree broom(std::uint32_t handle, std::uint32_t bristles, std::uint32_t length);

struct RoomInstance {
    StagedTree tree;
    std::uint32_t divergence_bound = 0;    // every pairwise divergence is at or below this level
    std::vector<std::uint32_t> low_levels;  // pool levels at or below the divergence bound
};

/*
 * Random skeleton up to `divergence_bound`, then private paths to the top.
 * The pool holds at least as many levels above the divergence bound as there
 * are tops, plus some skeleton levels. Carries a walk payload.
 */
RoomInstance with_room(Rng& rng, std::uint32_t max_tops = 5);

/// Random tree with at least two sibling tops and the pool below their parent level.
StagedTree sibling_tops(Rng& rng, std::size_t max_nodes = 14);

/// Random staged tree with at most max_nodes nodes and a random pool.
StagedTree random_staged(Rng& rng, std::size_t max_nodes);

/// Random subset of the top level, each member kept with probability 1/2.
NodeSet random_top_subset(const StagedTree& s, Rng& rng);

/// The ordinal menu used by generated ordinal intervals.
std::vector<Ordinal> ordinal_menu();

SpaceDescriptor random_space(Rng& rng);

}  // namespace ordfrag
