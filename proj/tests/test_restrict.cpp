#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "monsterlab/monsters.hpp"
#include "monsterlab/restrict.hpp"

using namespace monsterlab;
using namespace monsterlab::restrict_ops;

namespace {

SampledFunction pl(std::vector<std::pair<long, long>> pts, long den = 1) {
    std::vector<std::pair<Rational, Rational>> rp;
    for (auto& [x, v] : pts) rp.emplace_back(Rational(x, den), Rational(v, den));
    return SampledFunction::from_values(rp, GapSet(rp.front().first, rp.back().first));
}

}  // namespace

TEST_CASE("rising sun on monotone inputs") {
    auto dec = pl({{0, 0}, {1, -1}, {2, -2}});
    auto u1 = rising_sun(dec, Rational(0), Rational(2));
    CHECK(u1.components.empty());
    CHECK(!u1.includes_a);

    auto inc = pl({{0, 0}, {1, 1}, {2, 2}});
    auto u2 = rising_sun(inc, Rational(0), Rational(2));
    REQUIRE(u2.components.size() == 1);
    CHECK(u2.components[0] == Interval(Rational(0), Rational(2)));
    CHECK(u2.includes_a);  // a itself is shadowed; reported per the open-in-[a,b) convention
}

TEST_CASE("rising sun on a tent") {
    // up on [0,1], down on [1,2]: shadow region is [0,1)
    auto tent = pl({{0, 0}, {1, 2}, {2, 0}});
    auto u = rising_sun(tent, Rational(0), Rational(2));
    REQUIRE(u.components.size() == 1);
    CHECK(u.components[0] == Interval(Rational(0), Rational(1)));
    CHECK(u.includes_a);

    auto oracle = rising_sun_bruteforce(tent, Rational(0), Rational(2));
    CHECK(oracle.components == u.components);
    CHECK(oracle.includes_a == u.includes_a);
}

TEST_CASE("rising sun interior shadow with exact crossing") {
    // valley then ridge: the shadow starts at an interior crossing point
    auto g = pl({{0, 4}, {1, 0}, {2, 3}, {3, 1}});
    auto u = rising_sun(g, Rational(0), Rational(3));
    auto oracle = rising_sun_bruteforce(g, Rational(0), Rational(3));
    CHECK(u.components == oracle.components);
    // crossing of value 3 on the segment [0,1]: x = 1/4
    REQUIRE(!u.components.empty());
    CHECK(u.components[0].first == Rational(1, 4));
    for (auto& [c, d] : u.components) CHECK(g.value_at(c) <= g.value_at(d));
}

TEST_CASE("lipschitz restriction on a linear function") {
    auto lin = pl({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    auto cert = lipschitz_restriction(lin, Rational(0), Rational(3), Rational(2));
    CHECK(cert.P.gaps.empty());
    CHECK(cert.P.lo == 0);
    CHECK(cert.P.hi == 3);
    CHECK(cert.gap_length_sum == 0);
}

TEST_CASE("lipschitz restriction excludes a steep run") {
    // staircase whose final segment is steep: the shadow set eats it
    auto f = pl({{0, 0}, {8, 1}, {16, 2}, {17, 42}}, 8);
    Rational a(0), b(Rational(17, 8));
    Rational secant = (f.value_at(b) - f.value_at(a)) / (b - a);
    Rational L = secant * Rational(3, 2);
    auto cert = lipschitz_restriction(f, a, b, L);
    CHECK(cert.gap_length_sum > 0);  // the steep segment is shadowed out
    CHECK(cert.P.hi < b);
    CHECK(cert.gap_length_sum <= cert.bound);
    CHECK(cert.bound < cert.hull_width);
    CHECK(cert.pairwise_checked > 0);

    CHECK_THROWS_WITH_AS(lipschitz_restriction(f, a, b, secant / 2),
                         "lipschitz_restriction: L too small (must exceed the secant slope)",
                         std::invalid_argument);

    auto zig = pl({{0, 0}, {1, 2}, {2, 1}});
    CHECK_THROWS_AS(lipschitz_restriction(zig, Rational(0), Rational(2), Rational(9)),
                    std::invalid_argument);
}

TEST_CASE("lipschitz restriction constant branch") {
    auto flat = pl({{0, 1}, {1, 1}, {2, 1}});
    auto cert = lipschitz_restriction(flat, Rational(0), Rational(2), Rational(1));
    CHECK(cert.constant_branch);
    CHECK(cert.P.gaps.empty());
}

TEST_CASE("fact1 interval checks") {
    using I = Interval;
    std::vector<I> cover = {{Rational(-1, 10), Rational(6, 10)}, {Rational(5, 10), Rational(11, 10)}};
    CHECK(interval_cover_check(cover, Rational(0), Rational(1)));
    Rational sum(0);
    for (auto& [x, y] : cover) sum += y - x;
    CHECK(sum == Rational(13, 10));
    CHECK(sum > 1);

    std::vector<I> disj = {{Rational(0), Rational(3, 10)}, {Rational(5, 10), Rational(9, 10)}};
    CHECK(interval_disjoint_sum(disj, Rational(0), Rational(1)));

    std::vector<I> non = {{Rational(0), Rational(4, 10)}, {Rational(6, 10), Rational(1)}};
    CHECK(!interval_cover_check(non, Rational(0), Rational(1)));

    CHECK_THROWS(interval_cover_check({{Rational(1), Rational(0)}}, Rational(0), Rational(1)));
    CHECK_THROWS(interval_disjoint_sum({{Rational(0), Rational(2)}}, Rational(0), Rational(1)));
}

TEST_CASE("monotone restriction branches") {
    GapSet full(Rational(0), Rational(1));
    auto inc = SampledFunction::tabulate(Rational(0), Rational(1), 16,
                                         [](const Rational& x) { return x * x; });
    auto r = monotone_restriction(inc, full, 3);
    CHECK(r.branch == "monotone");
    CHECK(r.Q.lo == full.lo);

    auto dec = SampledFunction::tabulate(Rational(0), Rational(1), 16,
                                         [](const Rational& x) { return -x; });
    CHECK(monotone_restriction(dec, full, 3).branch == "monotone");

    monsters::TakagiSpec tk{1};
    auto tak = SampledFunction::tabulate(Rational(0), Rational(1), 1024, [&](const Rational& x) {
        return monsters::takagi(tk, x).partial;
    });
    auto rt = monotone_restriction(tak, full, 3);
    CHECK(rt.branch == "tree");
    CHECK(rt.points.size() == 8);
    for (size_t i = 0; i + 1 < rt.points.size(); ++i) {
        CHECK(rt.points[i].first < rt.points[i + 1].first);
        CHECK(rt.points[i].second < rt.points[i + 1].second);
    }
}

TEST_CASE("quotient scan moduli") {
    auto lin = pl({{0, 0}, {1, 3}, {2, 6}, {3, 9}, {4, 12}});
    auto rep = quotient_uc_scan(lin, lin.domain, {1.0, 0.5});
    CHECK(rep.max_abs_q == doctest::Approx(3.0));
    for (auto& [d, w] : rep.omega) CHECK(w == doctest::Approx(0.0));

    auto sq = SampledFunction::tabulate(Rational(0), Rational(1), 20,
                                        [](const Rational& x) { return x * x; });
    auto rep2 = quotient_uc_scan(sq, sq.domain, {0.5, 0.25});
    CHECK(rep2.max_abs_q <= 2.0 + 1e-12);
    for (auto& [d, w] : rep2.omega) CHECK(w <= 2 * d + 1e-12);

    auto two = pl({{0, 0}, {1, 1}});
    CHECK_THROWS(quotient_uc_scan(two, GapSet(Rational(5), Rational(6)), {0.5}));
}

TEST_CASE("differentiable restriction pipeline") {
    auto sq = SampledFunction::tabulate(Rational(0), Rational(1), 24,
                                        [](const Rational& x) { return x * x; });
    DiffOptions opt;
    opt.tol = 0.2;
    auto r = differentiable_restriction(sq, Rational(0), Rational(1), opt);
    CHECK(r.branch == "monotone+lipschitz");
    CHECK(r.Q.gaps.empty());  // already C^1: full carrier survives
    CHECK(r.refined);
    for (auto& [x, d] : r.derivative_table)
        CHECK(std::fabs(d - 2 * rat_to_double(x)) < 0.15);

    // zigzag: no monotone run, large level sets
    std::vector<std::pair<Rational, Rational>> zz;
    for (int i = 0; i <= 16; ++i) zz.emplace_back(Rational(i, 16), Rational(i % 2));
    auto zig = SampledFunction::from_values(zz, GapSet(Rational(0), Rational(1)));
    DiffOptions zopt;
    zopt.min_run = 4;
    zopt.level_m = 4;
    auto rz = differentiable_restriction(zig, Rational(0), Rational(1), zopt);
    CHECK(rz.branch == "level-set");

    monsters::TakagiSpec tk{2};
    auto tak = SampledFunction::tabulate(Rational(0), Rational(1), 512, [&](const Rational& x) {
        return monsters::takagi(tk, x).partial;
    });
    auto rt = differentiable_restriction(tak, Rational(0), Rational(1), DiffOptions{});
    CHECK(rt.modulus.max_abs_q < 1e9);
    CHECK(!rt.derivative_table.empty());

    // too coarse for any branch: reported as an error, not a bogus result
    monsters::TakagiSpec deep{4};
    auto rough = SampledFunction::tabulate(Rational(0), Rational(1), 96, [&](const Rational& x) {
        return monsters::takagi(deep, x).partial;
    });
    CHECK_THROWS(differentiable_restriction(rough, Rational(0), Rational(1), DiffOptions{}));
}
