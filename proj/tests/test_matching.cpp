#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "ordfrag/generators.hpp"
#include "ordfrag/matching.hpp"

using namespace ordfrag;

namespace {

std::size_t brute_force_matching(const BipartiteMatcher& m) {
    std::set<std::size_t> used;
    std::function<std::size_t(std::size_t)> go = [&](std::size_t u) -> std::size_t {
        if (u == m.left_size()) return 0;
        std::size_t best = go(u + 1);
        for (auto v : m.neighbours(u)) {
            if (used.count(v)) continue;
            used.insert(v);
            best = std::max(best, 1 + go(u + 1));
            used.erase(v);
        }
        return best;
    };
    return go(0);
}

}  // namespace

TEST_SUITE("matching") {
    TEST_CASE("perfect matching on a path") {
        BipartiteMatcher m(3, 3);
        m.add_edge(0, 0);
        m.add_edge(1, 0);
        m.add_edge(1, 1);
        m.add_edge(2, 1);
        m.add_edge(2, 2);
        CHECK(m.solve() == 3);
        CHECK(m.deficiency().left.empty());
    }

    TEST_CASE("maximum size matches brute force and deficiency certifies it") {
        Rng rng(51);
        for (int i = 0; i < 400; ++i) {
            std::size_t l = draw(rng, 0, 7), r = draw(rng, 0, 7);
            BipartiteMatcher m(l, r);
            for (std::size_t u = 0; u < l; ++u) {
                for (std::size_t v = 0; v < r; ++v) {
                    if (draw(rng, 0, 2) == 0) m.add_edge(u, v);
                }
            }
            auto size = m.solve();
            CHECK(size == brute_force_matching(m));
            std::set<std::size_t> rights;
            for (std::size_t u = 0; u < l; ++u) {
                auto v = m.match_of_left(u);
                if (v == BipartiteMatcher::kFree) continue;
                CHECK(m.match_of_right(v) == u);
                CHECK(rights.insert(v).second);
            }
            auto d = m.deficiency();
            if (size < l) {
                CHECK(d.neighbourhood.size() < d.left.size());
                std::set<std::size_t> n;
                for (auto u : d.left) n.insert(m.neighbours(u).begin(), m.neighbours(u).end());
                CHECK(n.size() == d.neighbourhood.size());
            } else {
                CHECK(d.left.empty());
            }
        }
    }
}
