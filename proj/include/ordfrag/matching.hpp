#pragma once

#include <cstddef>
#include <vector>

namespace ordfrag {

/*
 * Maximum bipartite matching by Hopcroft-Karp, O(E sqrt(V)).
 *
 * Left vertices are 0..left-1, right vertices 0..right-1. Neighbours are
 * tried in insertion order, which fixes the tie-breaking of the result.
 */
class BipartiteMatcher {
public:
    static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

    BipartiteMatcher(std::size_t left, std::size_t right);

    void add_edge(std::size_t u, std::size_t v);

    /// Runs the algorithm and returns the matching size.
    std::size_t solve();

    std::size_t left_size() const { return adj_.size(); }
    std::size_t right_size() const { return match_right_.size(); }
    const std::vector<std::size_t>& neighbours(std::size_t u) const { return adj_[u]; }
    /// Right partner of u, or kFree.
    std::size_t match_of_left(std::size_t u) const { return match_left_[u]; }
    std::size_t match_of_right(std::size_t v) const { return match_right_[v]; }

    /*
     * Left vertices reachable by alternating paths from the free left
     * vertices, together with their neighbourhood. After solve(), every
     * neighbour is matched into the set, so |neighbourhood| < |set| whenever
     * some left vertex is free.
     */
    struct Deficiency {
        std::vector<std::size_t> left;
        std::vector<std::size_t> neighbourhood;
    };
    Deficiency deficiency() const;

private:
    bool bfs();
    bool dfs(std::size_t u);

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> dist_;
};

}  // namespace ordfrag
