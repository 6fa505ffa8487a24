#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monsterlab/evalcore.hpp"
#include "monsterlab/monsters.hpp"

using namespace monsterlab;
using namespace monsterlab::evalcore;

namespace {
const BallFn identity = [](double x) { return Ball::exact(x); };
const BallFn square = [](double x) { return Ball::exact(x) * Ball::exact(x); };
const BallFn volterra = [](double x) { return monsters::volterra_h(x); };
}  // namespace

TEST_CASE("diff_quotient on identity and x^2") {
    Ball q1 = diff_quotient(identity, 0.0, 1.0);
    CHECK(q1.c == 1.0);
    CHECK(q1.r < 1e-14);

    Ball q2 = diff_quotient(square, 1.0, 3.0);
    CHECK(q2.c == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(q2.contains(4.0));

    CHECK_THROWS_AS(diff_quotient(identity, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("diff_quotient of volterra_h at 2/pi vs 0") {
    double x = 2.0 / M_PI;
    Ball q = diff_quotient(volterra, x, 0.0);
    // h(2/pi) = 4/pi^2, h(0) = 0, so the slope is 2/pi
    CHECK(q.contains(2.0 / M_PI));
    CHECK(q.r < 1e-12);
}

TEST_CASE("invert_monotone basics") {
    BallFn cube = [](double x) { return Ball::exact(x) * Ball::exact(x) * Ball::exact(x); };
    double r = invert_monotone(cube, 8.0, 0.0, 3.0, 1e-12);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-12));

    double r2 = invert_monotone(identity, 0.5, 0.0, 1.0, 1e-12);
    CHECK(r2 == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(invert_monotone(identity, 9.0, 0.0, 1.0, 1e-12), "no bracket",
                         std::runtime_error);
}

TEST_CASE("invert_monotone realizes the pompeiu inverse at a forward point") {
    auto spec = monsters::PompeiuSpec::standard();
    double y = monsters::pompeiu_g(spec, 0.0).c;
    BallFn g = [&](double x) { return monsters::pompeiu_g(spec, x); };
    double x = invert_monotone(g, y, -1.0, 1.0, 1e-9);
    CHECK(std::fabs(x) < 1e-7);
}

TEST_CASE("derivative_estimate on x^2, volterra_h and |x|") {
    auto est = derivative_estimate(square, 1.0, {1e-2, 1e-4});
    for (const auto& e : est) CHECK(std::fabs(e.sym.c - 2.0) < 2 * e.scale + 1e-10);

    std::vector<double> scales;
    for (int k = 4; k <= 20; ++k) scales.push_back(std::ldexp(1.0, -k));
    auto sq = derivative_estimate(volterra, 0.0, scales);
    for (const auto& e : sq) CHECK(std::fabs(e.sym.c) <= e.scale + e.sym.r);

    BallFn absf = [](double x) { return Ball::exact(std::fabs(x)); };
    auto ab = derivative_estimate(absf, 0.0, {0.5, 0.25});
    for (const auto& e : ab) {
        CHECK(e.right.contains(1.0));
        CHECK(e.left.contains(-1.0));
    }

    CHECK_THROWS_AS(derivative_estimate(square, 0.0, {1e-3, 1e-2}), std::invalid_argument);
}

TEST_CASE("oscillation probes") {
    double small = oscillation(square, 0.7, {0.1, 0.01, 0.001});
    CHECK(small < 0.01);

    BallFn sign = [](double x) { return Ball::exact(x >= 0 ? 1.0 : -1.0); };
    CHECK(oscillation(sign, 0.0, {0.5, 0.01}) >= 2.0 - 1e-12);

    BallFn hp = [](double x) { return monsters::volterra_h_prime(x); };
    double osc = oscillation(hp, 0.0, {1e-2, 1e-3}, 4096);
    CHECK(osc > 1.8);  // cos(1/x) sweeps [-1,1]
}

TEST_CASE("ivp_probe finds intermediate values") {
    auto r = ivp_probe(identity, 0.0, 1.0, 0.5, 100);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(0.5).epsilon(1e-9));

    BallFn f = [](double x) { return Ball::exact(x) * Ball::exact(x) - Ball::exact(2.0); };
    auto r2 = ivp_probe(f, 0.0, 2.0, 0.0, 64);
    REQUIRE(r2.has_value());
    CHECK(*r2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    BallFn hp = [](double x) { return monsters::volterra_h_prime(x); };
    auto r3 = ivp_probe(hp, -1.0, 1.0, 0.3, 10000);
    REQUIRE(r3.has_value());
    CHECK(monsters::volterra_h_prime(*r3).contains(0.3));

    // no sign change at this grid: empty, not an error
    BallFn flat = [](double) { return Ball::exact(5.0); };
    CHECK(!ivp_probe(flat, 0.0, 1.0, 0.0, 16).has_value());
}
