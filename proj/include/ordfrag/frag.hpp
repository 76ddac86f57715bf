#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordfrag/openpart.hpp"
#include "ordfrag/ptree.hpp"
#include "ordfrag/rational.hpp"
#include "ordfrag/space.hpp"

namespace ordfrag {

/// Sorted and deduplicated copy.
std::vector<Point> sorted_points(std::vector<Point> pts);

using PointPair = std::pair<Point, Point>;
/// Delta_n: consecutive pairs of a sorted L_n.
using GapPairs = std::vector<PointPair>;

struct LnDecomposition {
    /// levels[n] = L_n, each sorted; levels[0] = {min K, max K}.
    std::vector<std::vector<Point>> levels;
    bool nested = true;        // L_n within L_{n+1}
    bool gap_identity = true;  // L_{n+1} \ L_n equals the union of (x,y) n L_{n+1} over Delta_n
};

/*
 * L_n = {min K, max K} together with the endpoints of every materialized
 * node of rank <= n, ranks taken in the staged truncation `s` of `t`.
 */
LnDecomposition ln_decomposition(const PartitionTree& t, const StagedTree& s, const OpenPartition& p);

/// The union of all L_n.
std::vector<Point> ln_union(const LnDecomposition& d);

struct ScatterReport {
    bool closed = true;
    bool scattered = true;
    std::optional<Point> missing_limit;  // a limit of A in K outside A
    std::size_t cb_rank = 0;             // derivative rounds until empty, minus one
};

inline constexpr std::uint64_t kDefaultTruncation = 8;

/*
 * Closedness and Cantor-Bendixson scatteredness of a finite point set.
 * Inside ordinal parts a limit p counts as a limit of A when A meets
 * (p[i], p) for every i < truncation, p[i] the fundamental sequence.
 */
ScatterReport verify_scattered_closed(const SpaceDescriptor& k, const std::vector<Point>& a,
                                      std::uint64_t truncation = kDefaultTruncation);

/// Points of [0, alpha] whose coefficients are all <= max(truncation, every coefficient of alpha).
std::vector<Point> truncated_ordinal_points(const Ordinal& alpha, std::uint64_t truncation);

/// First (u, v) with fewer than two points of L in [u, v].
std::optional<PointPair> verify_density(const SpaceDescriptor& k, const std::vector<Point>& l,
                                        const std::vector<PointPair>& pairs);

GapPairs delta_pairs(const SpaceDescriptor& k, const std::vector<Point>& ln);

/// Finite symmetric table with zero diagonal.
struct MetricTable {
    std::vector<Point> points;
    std::vector<std::vector<Rational>> d;

    Rational operator()(const Point& u, const Point& v) const;
    /// Empty string when symmetric, nonnegative, zero on the diagonal and square.
    std::string validate(bool require_triangle = false) const;
};

using DistanceFn = std::function<Rational(const Point&, const Point&)>;

enum class WitnessPreference { minimal, maximal };

struct FragmentWitness {
    std::optional<Point> lo;  // nullopt: unbounded below
    std::optional<Point> hi;  // nullopt: unbounded above
    std::vector<Point> members;  // M n U
    Rational diameter{0};
};

/*
 * Open interval U of K with M n U nonempty and diameter < eps. Candidates
 * are the intervals strictly between two M-neighbours, so M n U ranges over
 * the convex runs of M. minimal: leftmost shortest run; maximal: leftmost
 * longest run.
 */
std::optional<FragmentWitness> fragment_check(const SpaceDescriptor& k, const std::vector<Point>& m, const DistanceFn& d,
                                              const Rational& eps,
                                              WitnessPreference pref = WitnessPreference::minimal);

struct WeightReport {
    std::size_t top_size = 0;
    std::size_t pool_size = 0;  // nodes on pool levels
    bool simple = false;
    bool holds = false;         // top_size <= pool_size
    long long margin = 0;       // top_size - pool_size
};

WeightReport weight_bound(const StagedTree& s);

struct PartitionChain {
    std::vector<NodeId> chain;  // root-first
    std::size_t length = 0;
    std::size_t group_size = 0;
    NodeId anchor = kNoNode;  // the common lowest cell-mate ancestor
};

/*
 * Groups top nodes by their lowest cell-mate ancestor and returns the
 * cell of the largest group; ties go to the longer cell, then the lower
 * anchor level, then the lower anchor id.
 */
PartitionChain chain_from_partition(const StagedTree& s, const OpenPartition& p);

}  // namespace ordfrag
