#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ordfrag/frag.hpp"
#include "ordfrag/openpart.hpp"
#include "ordfrag/ptree.hpp"
#include "ordfrag/rnwit.hpp"

namespace ordfrag {

/*
 * Tree, staged truncation at the complete depth (successor top, so the
 * partition is all singletons), L_n decomposition, gap pairs and the
 * separating family, for one space.
 */
struct Pipeline {
    SpaceDescriptor space;
    PartitionTree tree;
    StagedTree staged;
    OpenPartition partition;
    LnDecomposition ln;
    std::vector<Point> l;  // union of the L_n
    std::vector<GapPairs> deltas;
    Family family;
};

Pipeline make_pipeline(const SpaceDescriptor& k, std::size_t budget);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;  // wall time; kept out of the rendered report
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;

    bool all_pass() const;
    /// One line per criterion; deterministic for a given seed.
    std::string render() const;
};

/// Time limits, in seconds, that criteria 1 and 9 are judged against.
inline constexpr double kAdmissibilitySeconds = 30;
inline constexpr double kSuiteSeconds = 300;

/// Criteria 1 to 8.
SuiteReport run_criteria(std::uint64_t seed);

/// Criteria 1 to 8, then 9: a second run must render byte-identically and both must finish in time.
SuiteReport run_suite(std::uint64_t seed);

}  // namespace ordfrag
