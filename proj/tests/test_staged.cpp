#include "doctest.h"
#include "ordfrag/errors.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/oracles.hpp"
#include "ordfrag/staged.hpp"

using namespace ordfrag;

TEST_SUITE("staged") {
    TEST_CASE("levels are depths") {
        auto s = full_binary(3, {0, 1, 2});
        CHECK(s.size() == 15);
        CHECK(s.level(0) == 0);
        CHECK(s.level(14) == 3);
        CHECK(s.top_nodes().size() == 8);
        CHECK(s.ancestor_at_level(14, 1) == 2);
        CHECK(s.ancestor_at_level(1, 2) == kNoNode);
        CHECK(s.meet(7, 8) == 3);
        CHECK(s.meet(7, 14) == 0);
        CHECK(s.pool_ancestors(7) == std::vector<NodeId>{0, 1, 3});
    }

    TEST_CASE("invariant violations are refused") {
        CHECK_THROWS_AS(StagedTree({kNoNode, 0, 0}, 1, {1}), DomainError);
        CHECK_THROWS_AS(StagedTree({kNoNode, kNoNode}, 0, {}), DomainError);
        CHECK_THROWS_AS(StagedTree({kNoNode, 2, 1}, 1, {}), DomainError);
        auto s = full_binary(2, {0});
        CHECK_THROWS_AS(make_node_set(s, {1}), DomainError);
        CHECK(make_node_set(s, {4, 3, 4}) == NodeSet{3, 4});
    }

    TEST_CASE("payloads must respect the tree") {
        auto s = full_binary(1, {0});
        CHECK_THROWS_AS(s.set_payload({{0, 3}, {0, 2}, {1, 3}}, 4), DomainError);
        s.set_payload({{0, 3}, {0, 1}, {1, 3}}, 4);
        CHECK(s.interval(2) == ChainInterval{1, 3});
    }

    TEST_CASE("pool ancestors agree with a parent walk") {
        Rng rng(41);
        for (int i = 0; i < 300; ++i) {
            auto s = random_staged(rng, 30);
            for (NodeId x = 0; x < s.size(); ++x) {
                auto mine = s.pool_ancestors(x);
                auto walked = oracle::pooled_ancestors(s, x);
                std::sort(mine.begin(), mine.end());
                std::sort(walked.begin(), walked.end());
                CHECK(mine == walked);
                for (std::uint32_t l = 0; l <= s.level(x); ++l) {
                    auto a = s.ancestor_at_level(x, l);
                    CHECK(s.level(a) == l);
                    CHECK(s.is_ancestor_or_self(a, x));
                }
            }
        }
    }

    TEST_CASE("shuffling preserves shape") {
        Rng rng(42);
        auto s = split_miniature(4, true);
        auto t = shuffled(s, rng);
        CHECK(t.size() == s.size());
        CHECK(t.top_nodes().size() == s.top_nodes().size());
        CHECK(t.pool() == s.pool());
        CHECK(t.chain_points().size() == s.chain_points().size());
    }
}
