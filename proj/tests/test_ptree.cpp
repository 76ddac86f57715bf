#include <algorithm>

#include "doctest.h"
#include "ordfrag/errors.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/ptree.hpp"
#include "support.hpp"

using namespace ordfrag;
using ordfrag::testing::indices;
using ordfrag::testing::N;
using ordfrag::testing::O;
using ordfrag::testing::W;

namespace {

bool has_clause(const AdmissibilityReport& r, const std::string& clause) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.clause == clause; });
}

PartitionTree hand_built(const SpaceDescriptor& k, std::vector<std::pair<ClosedInterval, std::optional<std::size_t>>> spec) {
    PartitionTree t;
    t.space = k;
    t.budget = spec.size();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        TreeNode n;
        n.id = i;
        n.interval = spec[i].first;
        n.parent = spec[i].second;
        n.level = Ordinal::finite(n.parent ? t.nodes[*n.parent].level.finite_part() + 1 : 0);
        if (n.parent) t.nodes[*n.parent].children.push_back(i);
        t.nodes.push_back(n);
    }
    return t;
}

std::vector<std::size_t> branch_to(const PartitionTree& t, std::size_t id) {
    std::vector<std::size_t> out{id};
    while (t.node(out.back()).parent) out.push_back(*t.node(out.back()).parent);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("ptree") {
    TEST_CASE("three-point chain") {
        auto t = build_tree(SpaceDescriptor::finite_chain(3), 10);
        REQUIRE(t.size() == 3);
        CHECK(t.node(0).interval == ClosedInterval{N(0), N(2)});
        CHECK(t.node(1).interval == ClosedInterval{N(0), N(1)});
        CHECK(t.node(2).interval == ClosedInterval{N(1), N(2)});
        CHECK(t.node(1).children.empty());
        CHECK(t.node(2).children.empty());
        CHECK(endpoints(t) == indices({0, 1, 2}));
    }

    TEST_CASE("omega splits at successors") {
        auto t = build_tree(SpaceDescriptor::ordinal_interval(O("w")), 7);
        REQUIRE(t.size() == 7);
        CHECK(t.node(1).interval == ClosedInterval{W("0"), W("1")});
        CHECK(t.node(2).interval == ClosedInterval{W("1"), W("w")});
        CHECK(t.node(3).interval == ClosedInterval{W("1"), W("2")});
        CHECK(t.node(4).interval == ClosedInterval{W("2"), W("w")});
        auto two_levels = build_tree(SpaceDescriptor::ordinal_interval(O("w")), 5);
        CHECK(endpoints(two_levels) == std::vector<Point>{W("0"), W("1"), W("2"), W("w")});
        CHECK(endpoints(t) == std::vector<Point>{W("0"), W("1"), W("2"), W("3"), W("w")});
    }

    TEST_CASE("omega squared splits at omega") {
        auto t = build_tree(SpaceDescriptor::ordinal_interval(O("w^2")), 3);
        REQUIRE(t.size() == 3);
        CHECK(t.node(1).interval == ClosedInterval{W("0"), W("w")});
        CHECK(t.node(2).interval == ClosedInterval{W("w"), W("w^2")});
    }

    TEST_CASE("builder output is admissible") {
        CHECK(verify_admissible(build_tree(SpaceDescriptor::finite_chain(8), 100)).ok());
        Rng rng(31);
        for (int i = 0; i < 60; ++i) {
            auto t = build_tree(random_space(rng), draw(rng, 1, 300));
            CHECK(verify_admissible(t).ok());
        }
        CHECK_THROWS_AS(build_tree(SpaceDescriptor::finite_chain(4), 0), DomainError);
    }

    TEST_CASE("an alternative split rule still builds admissible trees") {
        SplitRule upper = [](const SpaceDescriptor& k, const ClosedInterval& iv) {
            auto pts = enumerate(k, iv);
            return pts[pts.size() - 2];
        };
        auto t = build_tree(SpaceDescriptor::finite_chain(9), 100, upper);
        CHECK(verify_admissible(t).ok());
        CHECK(t.node(1).interval == ClosedInterval{N(0), N(7)});
    }

    TEST_CASE("constructed violations are named") {
        auto six = SpaceDescriptor::finite_chain(6);
        auto overlap = hand_built(six, {{{N(0), N(5)}, std::nullopt}, {{N(0), N(3)}, 0}, {{N(2), N(5)}, 0}});
        CHECK(has_clause(verify_admissible(overlap), "level-overlap"));
        auto grown = hand_built(six, {{{N(0), N(5)}, std::nullopt},
                                      {{N(0), N(1)}, 0},
                                      {{N(1), N(5)}, 0},
                                      {{N(0), N(1)}, 1},
                                      {{N(0), N(1)}, 1}});
        CHECK(has_clause(verify_admissible(grown), "clause-4"));
    }

    TEST_CASE("separating pairs") {
        auto t = build_tree(SpaceDescriptor::finite_chain(8), 100);
        auto l = endpoints(t);
        auto in_l = [&](const Point& p) { return std::binary_search(l.begin(), l.end(), p); };
        for (std::uint64_t u = 0; u < 8; ++u) {
            for (std::uint64_t v = u + 1; v < 8; ++v) {
                auto [x, y] = find_separating_pair(t, N(u), N(v));
                CHECK(N(u) <= x);
                CHECK(x < y);
                CHECK(y <= N(v));
                CHECK(in_l(x));
                CHECK(in_l(y));
            }
        }
        auto adj = find_separating_pair(t, N(4), N(5));
        CHECK(adj.x == N(4));
        CHECK(adj.y == N(5));

        auto omega = build_tree(SpaceDescriptor::ordinal_interval(O("w")), 20);
        auto p = find_separating_pair(omega, W("3"), W("w"));
        CHECK(W("3") <= p.x);
        CHECK(p.x < p.y);
        CHECK(p.y <= W("w"));
        CHECK_THROWS_AS(find_separating_pair(omega, W("30"), W("w")), InsufficientMaterialization);
    }

    TEST_CASE("chain order types") {
        auto omega = build_tree(SpaceDescriptor::ordinal_interval(O("w")), 20);
        auto right = rightmost_branch(omega);
        for (std::size_t i = 2; i < right.size(); ++i) {
            CHECK(omega.node(right[i - 1]).interval.lo < omega.node(right[i]).interval.lo);
            CHECK(omega.node(right[i]).interval.hi == W("w"));
        }
        CHECK(chain_order_types(omega, right).ok());
        CHECK(chain_order_types(omega, {0}).ok());

        auto t = build_tree(SpaceDescriptor::finite_chain(16), 1000);
        for (std::size_t id = 0; id < t.size(); ++id) {
            if (!t.node(id).children.empty()) continue;
            auto r = chain_order_types(t, branch_to(t, id));
            CHECK(r.ok());
        }
        CHECK_THROWS_AS(chain_order_types(t, {1, 2}), DomainError);
    }

    TEST_CASE("branches shrink strictly") {
        Rng rng(32);
        for (int i = 0; i < 30; ++i) {
            auto k = random_space(rng);
            auto t = build_tree(k, 200);
            for (const auto& n : t.nodes) {
                if (!n.parent) continue;
                const auto& p = t.node(*n.parent).interval;
                CHECK(p.lo <= n.interval.lo);
                CHECK(n.interval.hi <= p.hi);
                CHECK(!(p == n.interval));
            }
        }
    }

    TEST_CASE("staged truncation") {
        auto t = build_tree(SpaceDescriptor::finite_chain(8), 100);
        auto s = to_staged(t, 2, {0, 1});
        CHECK(s.size() == 7);
        CHECK(s.top_nodes().size() == 4);
        CHECK(s.has_payload());
        auto root_only = to_staged(t, 0, {});
        CHECK(root_only.size() == 1);
        CHECK_THROWS_AS(to_staged(t, 2, {0, 2}), DomainError);
        CHECK_THROWS_AS(to_staged(t, 0, {0}), DomainError);
        CHECK_THROWS_AS(to_staged(build_tree(SpaceDescriptor::finite_chain(64), 5), 4, {}), InsufficientMaterialization);
    }

    TEST_CASE("complete depth") {
        CHECK(complete_depth(build_tree(SpaceDescriptor::finite_chain(8), 100)) == 3);
        CHECK(complete_depth(build_tree(SpaceDescriptor::finite_chain(64), 5)) == 1);
    }
}
