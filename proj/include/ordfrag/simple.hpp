#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordfrag/staged.hpp"

namespace ordfrag {

/// Map from top-level nodes to strict ancestors at pool levels.
struct RegressiveMap {
    std::map<NodeId, NodeId> image;

    bool empty() const { return image.empty(); }
    std::size_t size() const { return image.size(); }
    NodeId operator()(NodeId x) const { return image.at(x); }
    NodeSet domain() const;
    bool injective() const;
    friend bool operator==(const RegressiveMap&, const RegressiveMap&) = default;
};

/// A set W of top nodes whose pooled ancestors N(W) number fewer than W.
struct HallViolator {
    NodeSet members;
    std::vector<NodeId> neighbourhood;
};

struct SimplicityVerdict {
    bool simple = false;
    RegressiveMap witness;   // when simple: an injective regressive map
    HallViolator violator;   // when not simple
};

class NoRoom : public std::runtime_error {
public:
    NoRoom(NodeId member, std::optional<std::uint32_t> bound_level, std::string what)
        : std::runtime_error(std::move(what)), member_(member), bound_level_(bound_level) {}
    NodeId member() const { return member_; }
    /// Level the chosen ancestor had to exceed, when one was forced.
    std::optional<std::uint32_t> bound_level() const { return bound_level_; }

private:
    NodeId member_;
    std::optional<std::uint32_t> bound_level_;
};

class NotSimpleError : public std::runtime_error {
public:
    NotSimpleError(HallViolator v, std::string what) : std::runtime_error(std::move(what)), violator_(std::move(v)) {}
    const HallViolator& violator() const { return violator_; }

private:
    HallViolator violator_;
};

class NoSubsequence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInjective : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Empty string when `m` is regressive into pool levels on exactly `domain`, else the reason.
std::string check_regressive(const StagedTree& s, const NodeSet& domain, const RegressiveMap& m);

/// Recomputes N(W) and checks |N(W)| < |W| with W inside `h`.
bool validate_violator(const StagedTree& s, const NodeSet& h, const HallViolator& v);

/// First pair x != y whose segments [m(x), x] and [m(y), y] meet.
std::optional<std::pair<NodeId, NodeId>> overlapping_segments(const StagedTree& s, const RegressiveMap& m);

/// Decides whether H has an injective regressive map into the pool levels.
SimplicityVerdict is_simple(const StagedTree& s, const NodeSet& h);

/// Moves an injective map onto the levels of another pool, lifting along branches.
RegressiveMap transfer_cofinal(const StagedTree& s, const RegressiveMap& pi, std::vector<std::uint32_t> target_pool);

/*
 * Builds sigma with pairwise disjoint segments [sigma(x), x] from a
 * regressive map pi whose fibres carry injective maps. Throws NoRoom when
 * no pool level on x's branch clears the bound forced by other members.
 */
RegressiveMap compose_fibrewise(const StagedTree& s, const RegressiveMap& pi,
                                const std::map<NodeId, RegressiveMap>& fibre_maps);

/// Regressive map with pairwise disjoint segments for a simple H.
RegressiveMap disjoint_intervals(const StagedTree& s, const NodeSet& h);

struct SimplePart {
    NodeSet members;
    RegressiveMap witness;
};

/// Witness for the union of disjoint simple parts; part i is routed through level_assignment[i].
RegressiveMap union_simple(const StagedTree& s, const std::vector<SimplePart>& parts,
                           const std::vector<std::uint32_t>& level_assignment);

struct FibreCertificate {
    NodeId image = 0;  // the fibre's common image w
    NodeId bound = 0;  // b in H bounding the fibre's minima
    bool strict = false;
};

struct BoundedRegressive {
    RegressiveMap map;
    bool trivial_branch = false;
    std::vector<FibreCertificate> certificates;
};

/*
 * Regressive map whose fibres have minima bounded by min b for some b in H.
 * With allow_trivial, a maximum among the minima settles it at once;
 * otherwise each a with some b strictly to its right is mapped to a pool
 * ancestor ending before min b.
 */
BoundedRegressive bounded_regressive(const StagedTree& s, const NodeSet& h, bool allow_trivial = true);

bool verify_bounded(const StagedTree& s, const NodeSet& h, const BoundedRegressive& r);

using SimplicityOracle = std::function<bool(const StagedTree&, const NodeSet&)>;

bool default_simplicity_oracle(const StagedTree& s, const NodeSet& h);

struct EndpointSplit {
    NodeSet left;   // L
    NodeSet right;  // R
};

/// {a in H : x < min a, max a <= min b} for a chain point x.
NodeSet left_window(const StagedTree& s, const NodeSet& h, std::uint64_t x, std::uint64_t min_b);
/// {a in H : max b <= min a, max a < y}.
NodeSet right_window(const StagedTree& s, const NodeSet& h, std::uint64_t max_b, std::uint64_t y);

EndpointSplit endpoint_LR(const StagedTree& s, const NodeSet& h, const SimplicityOracle& oracle = default_simplicity_oracle);

struct CondensationCore {
    NodeSet core;
    bool verified = true;
    std::size_t windows_checked = 0;
};

/// C = H \ (L u R), with the non-simplicity of its windows checked where H is not simple.
CondensationCore condensation_core(const StagedTree& s, const NodeSet& h);

}  // namespace ordfrag
