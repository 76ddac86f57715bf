#include <algorithm>

#include "doctest.h"
#include "ordfrag/generators.hpp"
#include "ordfrag/rnwit.hpp"
#include "ordfrag/suite.hpp"
#include "support.hpp"

using namespace ordfrag;
using ordfrag::testing::indices;
using ordfrag::testing::N;
using ordfrag::testing::O;
using ordfrag::testing::W;

namespace {

std::vector<GapPairs> five_deltas() {
    return {{}, {{N(0), N(4)}}, {{N(0), N(2)}, {N(2), N(4)}}};
}

std::vector<PointPair> all_pairs(const std::vector<Point>& pts) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) out.emplace_back(pts[i], pts[j]);
    }
    return out;
}

// First pair on which no member differs, by direct evaluation.
std::optional<PointPair> unseparated(const Family& f, const std::vector<Point>& pts) {
    for (const auto& [u, v] : all_pairs(pts)) {
        if (std::none_of(f.begin(), f.end(), [&](const StepFunction& g) { return g(u) != g(v); })) return PointPair{u, v};
    }
    return std::nullopt;
}

// Smallest d_A(w, z) over z in D, by scanning D.
Rational nearest(const PseudoMetric& d, const Point& w, const std::vector<Point>& dense) {
    Rational best(1000);
    for (const auto& z : dense) best = std::min(best, d(w, z));
    return best;
}

Family subfamily(const Family& f, Rng& rng) {
    Family out;
    for (const auto& g : f) {
        if (coin(rng)) out.push_back(g);
    }
    return out;
}

}  // namespace

TEST_SUITE("rnwit") {
    TEST_CASE("canonical cuts on five points") {
        auto k = SpaceDescriptor::finite_chain(5);
        auto f = separating_family(k, five_deltas());
        REQUIRE(f.size() == 3);
        CHECK(f[0].cut_lo == N(0));
        CHECK(f[0].cut_hi == N(1));
        CHECK(f[0].jump == Rational(1));
        CHECK(f[1].cut_lo == N(0));
        CHECK(f[1].jump == Rational(1, 2));
        CHECK(f[2].cut_lo == N(2));
        CHECK(f[2].cut_hi == N(3));
        CHECK(f[2].jump == Rational(1, 2));
    }

    TEST_CASE("gap up to omega") {
        auto k = SpaceDescriptor::ordinal_interval(O("w"));
        for (std::uint32_t n = 1; n <= 4; ++n) {
            std::vector<GapPairs> deltas(n + 1);
            deltas[n] = {{W("0"), W("w")}};
            auto f = separating_family(k, deltas);
            REQUIRE(f.size() == 1);
            CHECK(f[0].cut_lo == W("0"));
            CHECK(f[0].cut_hi == W("1"));
            CHECK(f[0](W("w")) == Rational(1, n));
            CHECK(f[0](W("0")) == Rational(0));
            for (std::uint64_t i = 1; i < 50; ++i) CHECK(f[0](Point::ordinal(Ordinal::finite(i))) == Rational(1, n));
        }
    }

    TEST_CASE("step functions are monotone with values in the unit interval") {
        for (std::uint64_t n : {5u, 9u, 17u, 33u}) {
            auto p = make_pipeline(SpaceDescriptor::finite_chain(n), 4 * n);
            auto pts = enumerate(p.space, whole_space(p.space));
            CHECK(norm_bounded(p.family));
            for (const auto& f : p.family) {
                CHECK(adjacency(p.space, f.cut_lo).successor == f.cut_hi);
                CHECK(f.x <= f.cut_lo);
                CHECK(f.cut_hi <= f.y);
                for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(f(pts[i]) <= f(pts[i + 1]));
                CHECK(f(pts.front()) == Rational(0));
                CHECK(f(pts.back()) == f.jump);
            }
        }
    }

    TEST_CASE("other gaps of a level are constant on a gap") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(23), 100);
        for (std::uint32_t i = 1; i < p.deltas.size(); ++i) {
            for (const auto& [x, y] : p.deltas[i]) {
                auto gap = enumerate(p.space, {x, y});
                for (const auto& f : p.family) {
                    if (f.n != i || (f.x == x && f.y == y)) continue;
                    for (const auto& w : gap) CHECK(f(w) == f(x));
                }
            }
        }
    }

    TEST_CASE("separation on eight points") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(8), 100);
        auto pts = enumerate(p.space, whole_space(p.space));
        auto pairs = all_pairs(pts);
        CHECK(pairs.size() == 28);
        CHECK(!check_separation(p.family, pairs));
        CHECK(!unseparated(p.family, pts));

        auto top = static_cast<std::uint32_t>(p.deltas.size() - 1);
        auto missing = without_level(p.family, top);
        auto found = check_separation(missing, pairs);
        REQUIRE(found);
        CHECK(*found == *unseparated(missing, pts));
        CHECK(found->first == N(2));
        CHECK(found->second == N(3));

        CHECK(!check_separation(p.family, {}));
    }

    TEST_CASE("separation follows from density") {
        for (std::uint64_t n = 2; n <= 40; ++n) {
            auto p = make_pipeline(SpaceDescriptor::finite_chain(n), 4 * n);
            auto pairs = all_pairs(enumerate(p.space, whole_space(p.space)));
            if (!verify_density(p.space, p.l, pairs)) CHECK(!check_separation(p.family, pairs));
        }
    }

    TEST_CASE("pseudo-metric values") {
        auto k = SpaceDescriptor::finite_chain(5);
        auto f = separating_family(k, five_deltas());
        Family level2(f.begin() + 1, f.end());
        auto d = pseudo_metric(level2);
        CHECK(d(N(1), N(3)) == Rational(1, 2));
        CHECK(d(N(2), N(2)) == Rational(0));
        CHECK(pseudo_metric({})(N(0), N(4)) == Rational(0));
        CHECK(induced_metric({f[0]})(N(0), N(4)) == Rational(1));
        CHECK(induced_metric({f[0]})(N(1), N(4)) == Rational(0));
    }

    TEST_CASE("pseudo-metric axioms on random triples") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(37), 200);
        auto pts = enumerate(p.space, whole_space(p.space));
        Rng rng(91);
        auto d = pseudo_metric(subfamily(p.family, rng));
        for (int i = 0; i < 10000; ++i) {
            const auto& a = pts[draw(rng, 0, pts.size() - 1)];
            const auto& b = pts[draw(rng, 0, pts.size() - 1)];
            const auto& c = pts[draw(rng, 0, pts.size() - 1)];
            CHECK(d(a, a) == Rational(0));
            CHECK(d(a, b) == d(b, a));
            CHECK(d(a, c) <= d(a, b) + d(b, c));
        }
    }

    TEST_CASE("dense set on two points") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(2), 4);
        auto rec = dense_set(p.space, p.deltas, p.family, p.l);
        CHECK(rec.d == indices({0, 1}));
    }

    TEST_CASE("dense set on five points is dense for the pseudo-metric") {
        auto k = SpaceDescriptor::finite_chain(5);
        auto deltas = five_deltas();
        auto a = separating_family(k, deltas);
        auto l = indices({0, 2, 4});
        auto rec = dense_set(k, deltas, a, l);
        auto d = pseudo_metric(a);
        for (const auto& z : rec.d) CHECK(is_valid(k, z));
        for (const auto& w : enumerate(k, whole_space(k))) {
            for (std::uint32_t n = 1; n <= 8; ++n) CHECK(nearest(d, w, rec.d) < Rational(1, n));
        }
    }

    TEST_CASE("dense set on omega") {
        auto p = make_pipeline(SpaceDescriptor::ordinal_interval(O("w")), 40);
        Rng rng(92);
        auto a = subfamily(p.family, rng);
        auto rec = dense_set(p.space, p.deltas, a, p.l);
        auto d = pseudo_metric(a);
        std::vector<Point> ws{W("w")};
        while (ws.size() < 100) ws.push_back(Point::ordinal(Ordinal::finite(draw(rng, 0, 200))));
        for (const auto& w : ws) {
            for (std::uint32_t n = 1; n <= 8; ++n) CHECK(nearest(d, w, rec.d) < Rational(1, n));
        }
    }

    TEST_CASE("approximation") {
        auto p9 = make_pipeline(SpaceDescriptor::finite_chain(9), 40);
        Rng rng(93);
        for (int t = 0; t < 20; ++t) {
            auto a = subfamily(p9.family, rng);
            auto rec = dense_set(p9.space, p9.deltas, a, p9.l);
            auto d = pseudo_metric(a);
            for (const auto& w : enumerate(p9.space, whole_space(p9.space))) {
                for (std::uint32_t n = 1; n <= 8; ++n) {
                    auto r = approximate(p9.space, w, n, p9.deltas, a, rec);
                    CHECK(std::binary_search(rec.d.begin(), rec.d.end(), r.z));
                    CHECK(r.distance == d(w, r.z));
                    CHECK(r.distance < Rational(1, n));
                    if (std::binary_search(rec.d.begin(), rec.d.end(), w)) {
                        CHECK(r.z == w);
                        CHECK(r.distance == Rational(0));
                    }
                }
            }
        }

        auto pw = make_pipeline(SpaceDescriptor::ordinal_interval(O("w")), 40);
        auto rec = dense_set(pw.space, pw.deltas, pw.family, pw.l);
        auto d = pseudo_metric(pw.family);
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto r = approximate(pw.space, W("w"), n, pw.deltas, pw.family, rec);
            CHECK(d(W("w"), r.z) < Rational(1, n));
        }
    }

    TEST_CASE("Namioka check and its negative controls") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(8), 100);
        auto pts = enumerate(p.space, whole_space(p.space));
        auto pairs = all_pairs(pts);
        Rng rng(94);
        std::vector<NamiokaSample> samples;
        for (int i = 0; i < 5; ++i) samples.push_back({subfamily(p.family, rng), pts});
        auto full = namioka_check(p.space, p.family, p.deltas, p.l, pairs, samples, 8);
        CHECK(full.ok());
        CHECK(full.density_checks > 0);

        auto scaled3 = namioka_check(p.space, scaled(p.family, Rational(3)), p.deltas, p.l, pairs, {}, 8);
        CHECK(!scaled3.norm_ok);

        auto top = static_cast<std::uint32_t>(p.deltas.size() - 1);
        auto gapless = namioka_check(p.space, without_level(p.family, top), p.deltas, p.l, pairs, {}, 8);
        REQUIRE(gapless.unseparated);
        CHECK(gapless.unseparated->first == N(2));
        CHECK(gapless.unseparated->second == N(3));
    }

    TEST_CASE("induced metric fragments every subset of eight points") {
        auto p = make_pipeline(SpaceDescriptor::finite_chain(8), 100);
        auto pts = enumerate(p.space, whole_space(p.space));
        auto d = induced_metric(p.family);
        DistanceFn fn = [&](const Point& u, const Point& v) { return d(u, v); };
        std::size_t witnessed = 0;
        for (unsigned mask = 1; mask < 256; ++mask) {
            std::vector<Point> m;
            for (unsigned i = 0; i < 8; ++i) {
                if (mask >> i & 1u) m.push_back(pts[i]);
            }
            auto w = fragment_check(p.space, m, fn, Rational(1, 8));
            if (w && !w->members.empty() && w->diameter < Rational(1, 8)) ++witnessed;
        }
        CHECK(witnessed == 255);
        CHECK(induced_metric({})(pts.front(), pts.back()) == Rational(0));
    }
}
