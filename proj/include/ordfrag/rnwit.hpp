#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordfrag/frag.hpp"
#include "ordfrag/rational.hpp"
#include "ordfrag/space.hpp"

namespace ordfrag {

/*
 * Increasing function with a single jump at the clopen cut (cut_lo, cut_hi)
 * of adjacent points: 0 up to cut_lo, `jump` from cut_hi on. Tagged by the
 * gap pair (x, y) of Delta_n it was built for.
 */
struct StepFunction {
    Point x;
    Point y;
    std::uint32_t n = 1;
    Point cut_lo;
    Point cut_hi;
    Rational jump{1};

    Rational operator()(const Point& w) const { return cut_lo < w ? jump : Rational(0); }
    friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

using Family = std::vector<StepFunction>;

class NoClopenCut : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// deltas[n] = Delta_n; level 0 is skipped. One jump of 1/n per gap pair.
Family separating_family(const SpaceDescriptor& k, const std::vector<GapPairs>& deltas);

/// Delta_n for every level of a decomposition.
std::vector<GapPairs> decomposition_deltas(const SpaceDescriptor& k, const LnDecomposition& d);

/// First pair (u, v) on which every member of the family agrees.
std::optional<PointPair> check_separation(const Family& family, const std::vector<PointPair>& pairs);

/// d(u, v) = max over the family of |f(u) - f(v)|; zero for the empty family.
struct PseudoMetric {
    Family family;
    Rational operator()(const Point& u, const Point& v) const;
};

PseudoMetric pseudo_metric(const Family& a);
PseudoMetric induced_metric(const Family& family);

/// Every member takes its values in [0, 1].
bool norm_bounded(const Family& family);
Family scaled(Family family, const Rational& factor);
Family without_level(const Family& family, std::uint32_t n);

inline constexpr std::uint64_t kDefaultDenominatorBound = 16;

struct BoxSelection {
    std::size_t pair = 0;  // index into the subset A
    std::optional<Point> lower;  // the box's point set is (lower, upper]; nullopt is unbounded
    std::optional<Point> upper;
    std::vector<std::pair<Rational, Rational>> box;  // (q_i, r_i), i = 1..n
    Point z;
};

/*
 * D = {min K, max K} u M_1 u M_2 u ... u {z}. Each gap pair of A at level n
 * carries the chain (x_i, y_i) in Delta_i, i <= n. A box fixes a value set
 * for every f_{x_i, y_i}; boxes with equal point sets are kept once, and z is
 * the least point of L in that set.
 */
struct DenseSetRecord {
    std::vector<Point> d;  // sorted
    std::vector<std::vector<Point>> m;  // m[n] = M_n, m[0] empty
    std::vector<BoxSelection> boxes;
    std::uint64_t denominator_bound = kDefaultDenominatorBound;
};

/// The nested chain (x_i, y_i), i = 1..n, of Delta pairs containing (x, y).
std::vector<PointPair> gap_chain(const std::vector<GapPairs>& deltas, const PointPair& xy, std::uint32_t n);

DenseSetRecord dense_set(const SpaceDescriptor& k, const std::vector<GapPairs>& deltas, const Family& a,
                         const std::vector<Point>& l, std::uint64_t denominator_bound = kDefaultDenominatorBound);

class ApproximationFailure : public std::runtime_error {
public:
    ApproximationFailure(std::string what, std::vector<std::string> trace)
        : std::runtime_error(std::move(what)), trace_(std::move(trace)) {}
    const std::vector<std::string>& trace() const { return trace_; }

private:
    std::vector<std::string> trace_;
};

struct Approximation {
    Point z;
    Rational distance{0};
    std::uint32_t k = 0;  // maximal level of an A-gap around w, or 0
    std::vector<std::string> trace;
};

/// z in D with d_A(w, z) < 1/n, checked before returning.
Approximation approximate(const SpaceDescriptor& k, const Point& w, std::uint32_t n, const std::vector<GapPairs>& deltas,
                          const Family& a, const DenseSetRecord& d);

struct NamiokaReport {
    bool norm_ok = true;
    std::optional<PointPair> unseparated;
    std::size_t density_checks = 0;
    std::vector<std::string> density_failures;
    bool ok() const { return norm_ok && !unseparated && density_failures.empty(); }
};

struct NamiokaSample {
    Family a;
    std::vector<Point> w;
};

/// Norm bound, separation on `pairs`, and d_A-density for each sample at n = 1..max_n.
NamiokaReport namioka_check(const SpaceDescriptor& k, const Family& family, const std::vector<GapPairs>& deltas,
                            const std::vector<Point>& l, const std::vector<PointPair>& pairs,
                            const std::vector<NamiokaSample>& samples, std::uint32_t max_n,
                            std::uint64_t denominator_bound = kDefaultDenominatorBound);

}  // namespace ordfrag
