#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monsterlab/gapset.hpp"
#include "monsterlab/perfectsets.hpp"
#include "monsterlab/pow3.hpp"
#include "monsterlab/rng.hpp"

using namespace monsterlab;
using namespace monsterlab::perfectsets;

TEST_CASE("cantor_ternary depths") {
    auto c0 = cantor_ternary(0);
    CHECK(c0.lo == 0);
    CHECK(c0.hi == 1);
    CHECK(c0.gaps.empty());

    auto c1 = cantor_ternary(1);
    REQUIRE(c1.gaps.size() == 1);
    CHECK(c1.gaps[0] == std::pair<Rational, Rational>(Rational(1, 3), Rational(2, 3)));

    auto c2 = cantor_ternary(2);
    REQUIRE(c2.gaps.size() == 3);
    CHECK(c2.gaps[0] == std::pair<Rational, Rational>(Rational(1, 9), Rational(2, 9)));
    CHECK(c2.gaps[1] == std::pair<Rational, Rational>(Rational(1, 3), Rational(2, 3)));
    CHECK(c2.gaps[2] == std::pair<Rational, Rational>(Rational(7, 9), Rational(8, 9)));
}

TEST_CASE("hat rejoins middle thirds") {
    GapSet plain(Rational(0), Rational(1));
    auto h0 = hat(plain);
    CHECK(h0.gaps.empty());

    GapSet one(Rational(-1), Rational(4), {{Rational(0), Rational(3)}});
    auto h1 = hat(one);
    REQUIRE(h1.gaps.size() == 2);
    CHECK(h1.gaps[0] == std::pair<Rational, Rational>(Rational(0), Rational(1)));
    CHECK(h1.gaps[1] == std::pair<Rational, Rational>(Rational(2), Rational(3)));

    // represented set grows: every gap of hat(Q) sits inside a gap of Q
    auto c3 = cantor_ternary(3);
    auto hc = hat(c3);
    for (auto& [a, b] : hc.gaps) {
        bool inside = false;
        for (auto& [u, v] : c3.gaps)
            if (u <= a && b <= v) inside = true;
        CHECK(inside);
    }
}

TEST_CASE("gapset json round trip") {
    auto c = cantor_ternary(3);
    auto back = gapset_from_json(gapset_to_json(c));
    CHECK(back.lo == c.lo);
    CHECK(back.hi == c.hi);
    CHECK(back.gaps == c.gaps);
    CHECK(back.generator == c.generator);
    CHECK_THROWS(gapset_from_json("{\"gaps\": []}"));
}

TEST_CASE("code_N base cases") {
    CHECK(code_N({}) == 1);
    CHECK(code_N({0}) == 3);
    CHECK(code_N({1}) == 2);
    // 2^n <= N < 2^(n+1)
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int len = 1 + static_cast<int>(rng.below(14));
        BitPrefix s = prefix_from_index(static_cast<std::uint32_t>(rng.bits()) &
                                            ((1u << len) - 1),
                                        len);
        long long n = code_N(s);
        CHECK(n >= (1LL << len));
        CHECK(n < (1LL << (len + 1)));
    }
}

TEST_CASE("embed_h examples") {
    auto zero = embed_h(BitPrefix{0, 0, 0});
    CHECK(zero.c == 0);
    CHECK(zero.r > 0);

    auto one = embed_h(BitPrefix{1});
    CHECK(one.c == Rational(2, 3));
    CHECK(one.r == rat_pow(Rational(3), -4));  // tail exponent 2 * N(<1>) = 4

    // ordering: agreeing before n, s_n = 0 < t_n = 1 implies h(s) < h(t)
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int len = 2 + static_cast<int>(rng.below(9));
        std::uint32_t base = static_cast<std::uint32_t>(rng.bits()) & ((1u << len) - 1);
        int n = static_cast<int>(rng.below(static_cast<std::uint64_t>(len)));
        std::uint32_t s = base & ~(1u << n);
        std::uint32_t t = base | (1u << n);
        // make bits above n equal arbitrary (they already are)
        auto hs = embed_h(prefix_from_index(s, len));
        auto ht = embed_h(prefix_from_index(t, len));
        CHECK(hs.c < ht.c);
    }
}

TEST_CASE("adding machine cases") {
    CHECK(adding_machine({1, 1, 1}) == BitPrefix{0, 0, 0});
    CHECK(adding_machine({0, 1, 0}) == BitPrefix{1, 1, 0});
    CHECK(adding_machine({1, 0, 1}) == BitPrefix{0, 1, 1});
}

TEST_CASE("frak_f composes embedding and odometer") {
    auto [in1, out1] = frak_f(1, 1);  // s = <1> -> sigma(s) = <0>
    CHECK(in1.c == Rational(2, 3));
    CHECK(out1.c == 0);

    // the induced index map is a single 2^k-cycle
    int k = 3;
    std::uint32_t idx = 0;
    for (int step = 0; step < (1 << k); ++step) {
        BitPrefix s = prefix_from_index(idx, k);
        idx = prefix_to_index(adding_machine(s));
        if (step < (1 << k) - 1) CHECK(idx != 0);
    }
    CHECK(idx == 0);

    CHECK_THROWS(frak_f(3, 9));
}

TEST_CASE("property (a) examples") {
    auto r1 = verify_property_a({0, 0, 0, 0});
    CHECK(r1.ok);
    REQUIRE(r1.exceptional_n.has_value());
    CHECK(*r1.exceptional_n == 1);
    CHECK(r1.mismatches == std::vector<int>{1});

    auto r2 = verify_property_a({1, 1, 1, 1});
    CHECK(r2.ok);
    CHECK(!r2.exceptional_n.has_value());
    CHECK(r2.mismatches.empty());

    auto r3 = verify_property_a({1, 0, 1, 1});
    CHECK(r3.ok);
    REQUIRE(r3.exceptional_n.has_value());
    CHECK(*r3.exceptional_n == 2);
}

TEST_CASE("property (b) examples and exhaustive small depth") {
    auto rep = verify_property_b({0}, {1});
    CHECK(rep.n == 0);
    CHECK(rep.ok());
    // |h(t) - h(s)| = 2/3 inside [3^-1, 3 * 3^-1]
    auto hs = embed_h(BitPrefix{0});
    auto ht = embed_h(BitPrefix{1});
    CHECK(ht.c - hs.c == Rational(2, 3));

    // symmetric
    auto rep2 = verify_property_b({1}, {0});
    CHECK(rep2.n == rep.n);
    CHECK(rep2.ok() == rep.ok());

    CHECK_THROWS(verify_property_b({1, 0}, {1, 0}));
    CHECK_THROWS(verify_property_b({1}, {1, 0}));

    for (int len = 1; len <= 6; ++len) {
        for (std::uint32_t s = 0; s < (1u << len); ++s) {
            for (std::uint32_t t = s + 1; t < (1u << len); ++t) {
                auto r = verify_property_b(prefix_from_index(s, len), prefix_from_index(t, len));
                CHECK(r.ok());
            }
        }
    }
}

TEST_CASE("pow3 sums agree with exact rationals") {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Pow3Sum a, b;
        Rational ra(0), rb(0);
        for (int j = 0; j < 6; ++j) {
            int e = static_cast<int>(rng.below(24));
            auto d = static_cast<long long>(rng.range(-4, 4));
            a.add_term(e, d);
            ra += Rational(d) * rat_pow(Rational(3), -e);
            int e2 = static_cast<int>(rng.below(24));
            auto d2 = static_cast<long long>(rng.range(-4, 4));
            b.add_term(e2, d2);
            rb += Rational(d2) * rat_pow(Rational(3), -e2);
        }
        a.normalize();
        b.normalize();
        CHECK(a.to_rational() == ra);
        int cmp = pow3_compare(a, b);
        CHECK(cmp == (ra < rb ? -1 : (ra == rb ? 0 : 1)));
        CHECK((a - b).to_rational() == ra - rb);
        CHECK((a + b).to_rational() == ra + rb);
    }
}
