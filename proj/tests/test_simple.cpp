#include <algorithm>
#include <set>

#include "doctest.h"
#include "ordfrag/errors.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/oracles.hpp"
#include "ordfrag/simple.hpp"

using namespace ordfrag;

namespace {

// Full binary tree over levels 0..3 in breadth-first order: l = 1, r = 2, ll = 3, ..., lll = 7, rrr = 14.
constexpr NodeId lll = 7, llr = 8, lrl = 9, rrr = 14;

// Nodes of [m(x), x] collected by walking parents, independent of the library's segment check.
bool segments_disjoint(const StagedTree& s, const RegressiveMap& m) {
    std::set<NodeId> seen;
    for (const auto& [x, a] : m.image) {
        for (NodeId y = x;; y = s.parent(y)) {
            if (!seen.insert(y).second) return false;
            if (y == a) break;
            if (s.parent(y) == kNoNode) return false;
        }
    }
    return true;
}

bool regressive_into(const StagedTree& s, const RegressiveMap& m, const std::vector<std::uint32_t>& levels) {
    return std::all_of(m.image.begin(), m.image.end(), [&](const auto& e) {
        return e.second != e.first && s.is_ancestor_or_self(e.second, e.first) &&
               std::count(levels.begin(), levels.end(), s.level(e.second)) == 1;
    });
}

// r - a1 - b1 - t1 and r - a2 - b2 - t2.
StagedTree two_branches() { return StagedTree({kNoNode, 0, 0, 1, 2, 3, 4}, 3, {1, 2}); }

// r - a - b with sibling tops t1, t2 under b.
StagedTree siblings() { return StagedTree({kNoNode, 0, 1, 2, 2}, 3, {0, 1}); }

}  // namespace

TEST_SUITE("simple") {
    TEST_CASE("all leaves of a full binary tree are not simple") {
        auto s = full_binary(3, {0, 1, 2});
        auto h = s.top_nodes();
        auto v = is_simple(s, h);
        CHECK(!v.simple);
        CHECK(v.violator.members == h);
        CHECK(v.violator.neighbourhood.size() == 7);
        CHECK(validate_violator(s, h, v.violator));
    }

    TEST_CASE("four leaves are simple") {
        auto s = full_binary(3, {0, 1, 2});
        NodeSet h{lll, llr, lrl, rrr};
        auto v = is_simple(s, h);
        CHECK(v.simple);
        CHECK(oracle::sdr_exists(s, h));
        CHECK(check_regressive(s, h, v.witness).empty());
        CHECK(v.witness.injective());
    }

    TEST_CASE("the empty set is simple") {
        auto s = full_binary(2, {0});
        auto v = is_simple(s, {});
        CHECK(v.simple);
        CHECK(v.witness.empty());
    }

    TEST_CASE("verdicts agree with exhaustive search") {
        Rng rng(61);
        for (int i = 0; i < 400; ++i) {
            auto s = random_staged(rng, 16);
            auto h = random_top_subset(s, rng);
            auto v = is_simple(s, h);
            CHECK(v.simple == oracle::sdr_exists(s, h));
            if (v.simple) {
                CHECK(check_regressive(s, h, v.witness).empty());
                CHECK(v.witness.injective());
            } else {
                CHECK(validate_violator(s, h, v.violator));
            }
        }
    }

    TEST_CASE("cofinal transfer") {
        auto s = full_binary(4, {0, 1, 2, 3});
        RegressiveMap pi;
        pi.image = {{15, 0}, {22, 1}, {30, 2}};
        auto moved = transfer_cofinal(s, pi, {2, 3});
        CHECK(moved.injective());
        CHECK(regressive_into(s, moved, {2, 3}));
        for (const auto& [x, w] : moved.image) CHECK(s.is_ancestor_or_self(pi(x), w));
        CHECK(transfer_cofinal(s, pi, {0, 1, 2, 3}) == pi);

        RegressiveMap pair;
        pair.image = {{15, 0}, {30, 2}};
        CHECK_THROWS_AS(transfer_cofinal(s, pair, {0}), NoSubsequence);
    }

    TEST_CASE("fibrewise composition on two branches") {
        auto s = two_branches();
        RegressiveMap pi;
        pi.image = {{5, 1}, {6, 2}};
        std::map<NodeId, RegressiveMap> fibres;
        fibres[1].image = {{5, 1}};
        fibres[2].image = {{6, 2}};
        auto sigma = compose_fibrewise(s, pi, fibres);
        CHECK((sigma(5) == 1 || sigma(5) == 3));
        CHECK((sigma(6) == 2 || sigma(6) == 4));
        CHECK(segments_disjoint(s, sigma));
    }

    TEST_CASE("fibrewise composition of a singleton returns its fibre map") {
        auto s = two_branches();
        RegressiveMap pi;
        pi.image = {{5, 1}};
        std::map<NodeId, RegressiveMap> fibres;
        fibres[1].image = {{5, 3}};
        CHECK(compose_fibrewise(s, pi, fibres) == fibres[1]);
    }

    TEST_CASE("sibling tops leave no room") {
        auto s = siblings();
        RegressiveMap pi;
        pi.image = {{3, 0}, {4, 1}};
        std::map<NodeId, RegressiveMap> fibres;
        fibres[0].image = {{3, 0}};
        fibres[1].image = {{4, 1}};
        CHECK_THROWS_AS(compose_fibrewise(s, pi, fibres), NoRoom);
        CHECK_THROWS_AS(disjoint_intervals(s, s.top_nodes()), NoRoom);
        CHECK(!oracle::disjoint_segments(s, s.top_nodes()));

        Rng rng(62);
        for (int i = 0; i < 100; ++i) {
            auto t = sibling_tops(rng, 14);
            CHECK_THROWS_AS(disjoint_intervals(t, t.top_nodes()), NoRoom);
            CHECK(!oracle::disjoint_segments(t, t.top_nodes()));
        }
    }

    TEST_CASE("disjoint intervals on combs") {
        for (std::uint32_t teeth = 1; teeth <= 6; ++teeth) {
            auto s = comb(teeth);
            auto m = disjoint_intervals(s, s.top_nodes());
            CHECK(check_regressive(s, s.top_nodes(), m).empty());
            CHECK(segments_disjoint(s, m));
            CHECK(!overlapping_segments(s, m));
        }
        auto s = comb(3);
        auto one = disjoint_intervals(s, {s.top_nodes().front()});
        CHECK(one.size() == 1);
    }

    TEST_CASE("disjoint intervals refuse a non-simple set") {
        auto s = full_binary(3, {0, 1, 2});
        CHECK_THROWS_AS(disjoint_intervals(s, s.top_nodes()), NotSimpleError);
    }

    TEST_CASE("disjoint segments exist exactly when the oracle finds them") {
        Rng rng(63);
        for (int i = 0; i < 300; ++i) {
            auto s = random_staged(rng, 14);
            auto h = random_top_subset(s, rng);
            bool feasible = oracle::disjoint_segments(s, h).has_value();
            try {
                auto m = disjoint_intervals(s, h);
                CHECK(feasible);
                CHECK(segments_disjoint(s, m));
            } catch (const NotSimpleError&) {
                CHECK(!feasible);
            } catch (const NoRoom&) {
                // refusals may be conservative; they are never wrong about a found map
            }
        }
    }

    TEST_CASE("union of simple parts") {
        auto s = comb(4);
        auto h = s.top_nodes();
        SimplePart whole{h, is_simple(s, h).witness};
        auto m = union_simple(s, {whole}, {s.pool().front()});
        CHECK(check_regressive(s, h, m).empty());
        CHECK(segments_disjoint(s, m));
        CHECK(union_simple(s, {SimplePart{}, SimplePart{}}, {s.pool()[0], s.pool()[1]}).empty());

        auto b = two_branches();
        SimplePart p1{{5}, is_simple(b, {5}).witness};
        SimplePart p2{{6}, is_simple(b, {6}).witness};
        auto u = union_simple(b, {p1, p2}, {1, 2});
        CHECK(segments_disjoint(b, u));
        CHECK(u.domain() == NodeSet{5, 6});
    }

    TEST_CASE("bounded regressive maps") {
        auto chain = split_miniature(3, false);
        auto h = chain.top_nodes();
        auto trivial = bounded_regressive(chain, h);
        CHECK(trivial.trivial_branch);
        CHECK(verify_bounded(chain, h, trivial));
        for (const auto& [x, w] : trivial.map.image) CHECK(w == chain.parent(x));

        Rng rng(64);
        for (int i = 0; i < 200; ++i) {
            auto inst = with_room(rng);
            auto tops = inst.tree.top_nodes();
            auto r = bounded_regressive(inst.tree, tops, false);
            CHECK(verify_bounded(inst.tree, tops, r));
        }

        auto root_only = split_miniature(3, false).with_pool({0});
        CHECK_THROWS_AS(bounded_regressive(root_only, root_only.top_nodes(), false), NoRoom);
    }

    TEST_CASE("left and right sets") {
        auto s = split_miniature(3, false);
        auto lr = endpoint_LR(s, s.top_nodes());
        CHECK(lr.left == NodeSet{4, 5, 6});
        CHECK(lr.right == NodeSet{3, 4, 5});
        auto by_search = endpoint_LR(s, s.top_nodes(), oracle::sdr_exists);
        CHECK(by_search.left == lr.left);
        CHECK(by_search.right == lr.right);

        auto empty = endpoint_LR(s, {});
        CHECK(empty.left.empty());
        CHECK(empty.right.empty());

        // A simple set: every member is in both sides except at the ends of the chain.
        auto c = comb(4);
        attach_walk_payload(c);
        auto tops = c.top_nodes();
        auto simple_lr = endpoint_LR(c, tops);
        std::set<NodeId> both(simple_lr.left.begin(), simple_lr.left.end());
        both.insert(simple_lr.right.begin(), simple_lr.right.end());
        CHECK(both.size() == tops.size());
    }

    TEST_CASE("condensation core") {
        auto c = comb(4);
        attach_walk_payload(c);
        CHECK(condensation_core(c, c.top_nodes()).core.empty());
        CHECK(condensation_core(c, {}).core.empty());

        // At finite scale L and R already cover the split miniature; the core is empty.
        auto s = split_miniature(4, false);
        auto core = condensation_core(s, s.top_nodes());
        CHECK(core.core.empty());
        CHECK(core.verified);
    }
}
