#include <algorithm>

#include "doctest.h"
#include "ordfrag/frag.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/suite.hpp"
#include "support.hpp"

using namespace ordfrag;
using ordfrag::testing::indices;
using ordfrag::testing::N;
using ordfrag::testing::O;
using ordfrag::testing::W;

namespace {

struct Interval {
    std::optional<Point> lo, hi;
    std::vector<Point> members;
};

// Every open interval with endpoints in K or unbounded, with the points of M inside it.
std::vector<Interval> all_basis_intervals(const SpaceDescriptor& k, const std::vector<Point>& m) {
    auto pts = enumerate(k, whole_space(k));
    std::vector<std::optional<Point>> ends{std::nullopt};
    for (const auto& p : pts) ends.push_back(p);
    std::vector<Interval> out;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        for (std::size_t j = 0; j < ends.size(); ++j) {
            if (i != 0 && j != 0 && !(*ends[i] < *ends[j])) continue;
            Interval iv{ends[i], ends[j], {}};
            for (const auto& p : m) {
                if ((!iv.lo || *iv.lo < p) && (!iv.hi || p < *iv.hi)) iv.members.push_back(p);
            }
            out.push_back(iv);
        }
    }
    return out;
}

Rational diameter(const std::vector<Point>& pts, const DistanceFn& d) {
    Rational best(0);
    for (const auto& a : pts) {
        for (const auto& b : pts) best = std::max(best, d(a, b));
    }
    return best;
}

}  // namespace

TEST_SUITE("frag") {
    TEST_CASE("decomposition of an eight-point chain") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(8), 100);
        REQUIRE(p.ln.levels.size() == 5);
        CHECK(p.ln.levels[0] == indices({0, 7}));
        CHECK(p.ln.levels[1] == indices({0, 7}));
        CHECK(p.ln.levels[2] == indices({0, 3, 7}));
        CHECK(p.ln.levels[3] == indices({0, 1, 3, 5, 7}));
        CHECK(p.ln.levels[4] == indices({0, 1, 2, 3, 4, 5, 6, 7}));
        CHECK(p.ln.nested);
        CHECK(p.ln.gap_identity);
    }

    TEST_CASE("levels are the endpoints of nodes of bounded rank") {
        for (std::uint64_t n = 2; n <= 40; ++n) {
            auto p = make_pipeline(SpaceDescriptor::finite_chain(n), 4 * n);
            // All-singleton partition: a node at depth j has rank j + 1.
            for (std::size_t lvl = 0; lvl < p.ln.levels.size(); ++lvl) {
                std::vector<Point> expect{min_point(p.space), max_point(p.space)};
                for (NodeId x = 0; x < p.staged.size(); ++x) {
                    if (p.staged.level(x) + 1 > lvl) continue;
                    const auto& iv = p.tree.node(p.staged.source_ids()[x]).interval;
                    expect.push_back(iv.lo);
                    expect.push_back(iv.hi);
                }
                CHECK(p.ln.levels[lvl] == sorted_points(expect));
            }
            CHECK(p.ln.levels.back() == enumerate(p.space, whole_space(p.space)));
        }
    }

    TEST_CASE("two-point space") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(2), 4);
        for (const auto& l : p.ln.levels) CHECK(l == indices({0, 1}));
    }

    TEST_CASE("omega gives finite prefixes plus omega") {
        auto p = make_pipeline(SpaceDescriptor::ordinal_interval(O("w")), 20);
        for (const auto& l : p.ln.levels) {
            REQUIRE(l.back() == W("w"));
            for (std::size_t i = 0; i + 1 < l.size(); ++i) CHECK(l[i] == Point::ordinal(Ordinal::finite(i)));
        }
        CHECK(p.ln.levels[2] == std::vector<Point>{W("0"), W("1"), W("w")});
        CHECK(p.ln.nested);
        CHECK(p.ln.gap_identity);
    }

    TEST_CASE("closed and scattered sets") {
        CHECK(verify_scattered_closed(SpaceDescriptor::finite_chain(8), indices({0, 3, 7})).closed);
        auto split = SpaceDescriptor::split_chain(4);
        auto r = verify_scattered_closed(split, enumerate(split, whole_space(split)));
        CHECK(r.closed);
        CHECK(r.scattered);
        CHECK(r.cb_rank == 0);

        auto w2 = O("w^2");
        auto t = verify_scattered_closed(SpaceDescriptor::ordinal_interval(w2), truncated_ordinal_points(w2, 8));
        CHECK(t.closed);
        CHECK(t.scattered);
        CHECK(t.cb_rank == 2);

        auto omega = SpaceDescriptor::ordinal_interval(O("w"));
        std::vector<Point> open;
        for (std::uint64_t i = 0; i <= 8; ++i) open.push_back(Point::ordinal(Ordinal::finite(i)));
        auto missing = verify_scattered_closed(omega, open);
        CHECK(!missing.closed);
        CHECK(*missing.missing_limit == W("w"));
    }

    TEST_CASE("Cantor-Bendixson rank equals degree on truncations") {
        for (const auto& a : ordinal_menu()) {
            for (std::uint64_t n : {3u, 5u, 8u}) {
                auto r = verify_scattered_closed(SpaceDescriptor::ordinal_interval(a), truncated_ordinal_points(a, n), n);
                CHECK(r.closed);
                CHECK(r.cb_rank == degree(a));
            }
        }
    }

    TEST_CASE("density") {
        auto t = build_tree(SpaceDescriptor::finite_chain(16), 1000);
        auto l = endpoints(t);
        std::vector<PointPair> pairs;
        for (std::uint64_t u = 0; u < 16; ++u) {
            for (std::uint64_t v = u + 1; v < 16; ++v) pairs.emplace_back(N(u), N(v));
        }
        CHECK(!verify_density(t.space, l, pairs));

        auto bad = verify_density(SpaceDescriptor::finite_chain(4), indices({0, 3}), {{N(1), N(2)}});
        REQUIRE(bad);
        CHECK(bad->first == N(1));
        CHECK(bad->second == N(2));
        CHECK(!verify_density(SpaceDescriptor::finite_chain(4), indices({0, 1, 3}), {{N(0), N(1)}}));
    }

    TEST_CASE("gap pairs") {
        auto five = SpaceDescriptor::finite_chain(5);
        CHECK(delta_pairs(five, indices({0, 4})) == GapPairs{{N(0), N(4)}});
        CHECK(delta_pairs(five, indices({0, 2, 4})) == GapPairs{{N(0), N(2)}, {N(2), N(4)}});
        CHECK(delta_pairs(five, indices({2})).empty());
    }

    TEST_CASE("fragmentation witnesses match brute force") {
        auto k = SpaceDescriptor::finite_chain(6);
        MetricTable table;
        table.points = indices({1, 2, 3, 4});
        table.d = {{0, Rational(1, 4), 1, 1},
                   {Rational(1, 4), 0, 1, 1},
                   {1, 1, 0, Rational(1, 3)},
                   {1, 1, Rational(1, 3), 0}};
        REQUIRE(table.validate(true).empty());
        DistanceFn d = [&](const Point& u, const Point& v) { return table(u, v); };
        Rational eps(1, 2);

        std::vector<Interval> good;
        for (auto& iv : all_basis_intervals(k, table.points)) {
            if (!iv.members.empty() && diameter(iv.members, d) < eps) good.push_back(iv);
        }
        auto by_size = [](bool shortest) {
            return [shortest](const Interval& a, const Interval& b) {
                if (a.members.size() != b.members.size()) {
                    return shortest ? a.members.size() < b.members.size() : a.members.size() > b.members.size();
                }
                return a.members.front() < b.members.front();
            };
        };
        auto want_min = *std::min_element(good.begin(), good.end(), by_size(true));
        auto want_max = *std::min_element(good.begin(), good.end(), by_size(false));
        CHECK(want_min.members == indices({1}));
        CHECK(want_max.members == indices({1, 2}));

        auto got_min = fragment_check(k, table.points, d, eps, WitnessPreference::minimal);
        auto got_max = fragment_check(k, table.points, d, eps, WitnessPreference::maximal);
        REQUIRE(got_min);
        REQUIRE(got_max);
        CHECK(got_min->members == want_min.members);
        CHECK(got_max->members == want_max.members);
        CHECK(got_max->diameter == Rational(1, 4));
        for (const auto& g : {*got_min, *got_max}) {
            for (const auto& p : table.points) {
                bool inside = (!g.lo || *g.lo < p) && (!g.hi || p < *g.hi);
                CHECK(inside == std::count(g.members.begin(), g.members.end(), p));
            }
        }
    }

    TEST_CASE("fragmentation with a zero metric takes everything") {
        auto k = SpaceDescriptor::finite_chain(5);
        DistanceFn zero = [](const Point&, const Point&) { return Rational(0); };
        auto w = fragment_check(k, indices({0, 2, 4}), zero, Rational(1, 100), WitnessPreference::maximal);
        REQUIRE(w);
        CHECK(w->members == indices({0, 2, 4}));
        CHECK(w->diameter == Rational(0));
        CHECK(!w->lo);
        CHECK(!w->hi);
    }

    TEST_CASE("weight bound") {
        auto c = weight_bound(comb(5));
        CHECK(c.simple);
        CHECK(c.holds);
        for (std::uint32_t k = 2; k <= 6; ++k) {
            auto w = weight_bound(split_miniature(k + 1, false));
            CHECK(w.top_size == (std::size_t{1} << k));
            CHECK(w.pool_size == (std::size_t{1} << k) - 1);
            CHECK(w.margin == 1);
            CHECK(!w.holds);
        }
        Rng rng(81);
        for (int i = 0; i < 300; ++i) {
            auto s = random_staged(rng, 18);
            auto w = weight_bound(s);
            if (w.simple) CHECK(w.holds);
        }
    }

    TEST_CASE("chains from partitions") {
        auto succ = StagedTree(full_binary_parents(3), 3, {0, 1, 2}, false);
        auto single = chain_from_partition(succ, singleton_partition(succ));
        CHECK(single.length == 1);
        CHECK(single.group_size == 1);

        auto path = StagedTree({kNoNode, 0, 1, 2}, 3, {0});
        auto whole = chain_from_partition(path, *partition_open(path).partition);
        CHECK(whole.length == 4);
        CHECK(whole.chain == std::vector<NodeId>{0, 1, 2, 3});

        auto c = comb(4);
        auto p = *partition_open(c).partition;
        auto chain = chain_from_partition(c, p);
        std::size_t longest = 0;
        for (const auto& cell : p.cells) longest = std::max(longest, cell.size());
        CHECK(chain.length == longest);
        auto idx = p.cell_index(c.size());
        for (auto x : chain.chain) CHECK(idx[x] == idx[chain.chain.front()]);
    }
}
