#include <map>
#include <random>

#include "doctest.h"
#include "ordfrag/errors.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/ordinal.hpp"
#include "support.hpp"

using namespace ordfrag;
using ordfrag::testing::O;

namespace {

// Reference sum on dense coefficient vectors: the terms of a strictly above
// b's leading exponent survive, the leading coefficients at that exponent add.
std::map<std::uint32_t, std::uint64_t> dense(const Ordinal& a) {
    std::map<std::uint32_t, std::uint64_t> out;
    for (const auto& t : a.terms()) out[t.exponent] = t.coefficient;
    return out;
}

Ordinal reference_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    auto da = dense(a), db = dense(b);
    std::uint32_t lead = b.terms().front().exponent;
    std::map<std::uint32_t, std::uint64_t> sum;
    for (auto [e, c] : da) {
        if (e > lead) sum[e] = c;
    }
    for (auto [e, c] : db) sum[e] += c;
    if (da.count(lead)) sum[lead] += da[lead];
    std::vector<Term> terms;
    for (auto it = sum.rbegin(); it != sum.rend(); ++it) terms.push_back({it->first, it->second});
    return Ordinal(terms);
}

Ordinal random_ordinal(Rng& rng) {
    std::vector<Term> terms;
    for (std::uint32_t e = 4; e-- > 0;) {
        if (coin(rng)) terms.push_back({e, draw(rng, 1, 5)});
    }
    return Ordinal(terms);
}

}  // namespace

TEST_SUITE("ordinal") {
    TEST_CASE("comparison follows Cantor normal form") {
        CHECK(compare(O("w*2+1"), O("w*2")) == std::strong_ordering::greater);
        CHECK(compare(O("0"), O("0")) == std::strong_ordering::equal);
        CHECK(compare(O("w^2"), O("w*5+7")) == std::strong_ordering::greater);
        CHECK(O("w^2*3") < O("w^3"));
    }

    TEST_CASE("addition absorbs the left tail") {
        CHECK(add(O("1"), O("w")) == O("w"));
        CHECK(add(O("w*2+3"), O("w")) == O("w*3"));
        CHECK(add(O("w^2+w*2"), O("w*3+1")) == O("w^2+w*5+1"));
    }

    TEST_CASE("addition agrees with the coefficient-vector reference") {
        Rng rng(11);
        for (int i = 0; i < 2000; ++i) {
            auto a = random_ordinal(rng), b = random_ordinal(rng);
            CHECK(add(a, b) == reference_add(a, b));
        }
    }

    TEST_CASE("addition is associative and monotone on the right") {
        Rng rng(12);
        for (int i = 0; i < 500; ++i) {
            auto a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
            CHECK(add(add(a, b), c) == add(a, add(b, c)));
            if (b < c) CHECK(add(a, b) < add(a, c));
            CHECK(a <= add(a, b));
            CHECK(b <= add(a, b));
        }
    }

    TEST_CASE("addition beyond the exponent bound is refused") {
        CHECK_THROWS_AS(add(O("w^3"), O("1"), 2), RangeError);
    }

    TEST_CASE("classification") {
        CHECK(classify(O("0")).kind == OrdinalKind::zero);
        auto c = classify(O("w^2+1"));
        CHECK(c.kind == OrdinalKind::successor);
        CHECK(*c.predecessor == O("w^2"));
        CHECK(classify(O("w*4")).kind == OrdinalKind::limit);
    }

    TEST_CASE("fundamental sequences") {
        CHECK(fundamental_sequence(O("w"), 3) == O("3"));
        CHECK(fundamental_sequence(O("w^2"), 3) == O("w*3"));
        CHECK(fundamental_sequence(O("w^2+w*2"), 5) == O("w^2+w+5"));
        CHECK_THROWS_AS(fundamental_sequence(O("w+1"), 0), DomainError);
    }

    TEST_CASE("fundamental sequences increase to their limit") {
        for (const auto& a : ordinal_menu()) {
            if (classify(a).kind != OrdinalKind::limit) continue;
            for (std::uint64_t i = 0; i < 20; ++i) {
                CHECK(fundamental_sequence(a, i) < a);
                CHECK(fundamental_sequence(a, i) < fundamental_sequence(a, i + 1));
            }
        }
    }

    TEST_CASE("degree") {
        CHECK(degree(O("w^2*3+w")) == 2);
        CHECK(degree(O("7")) == 0);
        CHECK(degree(O("w^3")) == 3);
        CHECK(degree(O("0")) == 0);
    }

    TEST_CASE("render and parse are inverse") {
        Rng rng(13);
        for (int i = 0; i < 300; ++i) {
            auto a = random_ordinal(rng);
            CHECK(parse_ordinal(render(a)) == a);
        }
        CHECK(render(O("w^2*3+w*2+5")) == "w^2*3+w*2+5");
        CHECK_THROWS_AS(parse_ordinal("w+w^2"), DomainError);
        CHECK_THROWS_AS(parse_ordinal("w^"), DomainError);
    }

    TEST_CASE("non-canonical terms are rejected") {
        CHECK_THROWS_AS(Ordinal({{1, 1}, {2, 1}}), DomainError);
        CHECK_THROWS_AS(Ordinal({{1, 0}}), DomainError);
    }
}
