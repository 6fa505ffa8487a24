#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monsterlab/evalcore.hpp"
#include "monsterlab/monsters.hpp"

using namespace monsterlab;
using namespace monsterlab::monsters;

TEST_CASE("volterra_h values") {
    CHECK(volterra_h(0.0).c == 0.0);
    CHECK(volterra_h(0.0).r == 0.0);
    CHECK(volterra_h(1.0 / M_PI).contains(0.0));
    CHECK(volterra_h(2.0 / M_PI).contains(4.0 / (M_PI * M_PI)));
}

TEST_CASE("volterra_h_prime values") {
    CHECK(volterra_h_prime(0.0).c == 0.0);
    CHECK(volterra_h_prime(1.0 / M_PI).contains(1.0));
    CHECK(volterra_h_prime(2.0 / M_PI).contains(4.0 / M_PI));
}

TEST_CASE("calculus examples psi, phi, eta") {
    CHECK(psi(0.0).c == 0.0);
    auto est = evalcore::derivative_estimate([](double x) { return psi(x); }, 0.0,
                                             {1e-2, 1e-3, 1e-4});
    // psi'(0) = 1: symmetric quotients approach 1 like the scale
    for (const auto& e : est) CHECK(std::fabs(e.sym.c - 1.0) <= 2 * e.scale + e.sym.r);

    CHECK(phi(0.0).c == 0.0);
    for (double x : {0.31, -0.17, 0.05, -0.008}) {
        CHECK(phi(x).lo() >= std::pow(x, 4) - 1e-12);
        CHECK(phi(x).lo() > 0.0);
    }

    CHECK(eta(0.0).c == 0.0);
    CHECK(eta_prime(0.0).c == 0.0);
    for (long n : {100000L, 1000000L}) {
        double xn = 1.0 / (2 * M_PI * static_cast<double>(n));
        CHECK(std::fabs(eta_prime(xn).c + 1.0) < 1e-4);
    }
}

TEST_CASE("volterra_on_set") {
    GapSet E(Rational(0), Rational(1), {{Rational(1, 4), Rational(3, 4)}});
    CHECK(volterra_on_set(E, 0.125).c == 0.0);  // on E

    double d = volterra_zero();
    CHECK(volterra_h_prime(d).contains(0.0));
    CHECK(d > 0.2);
    CHECK(d < 0.4);

    // midpoint of the gap: dist = (b-a)/2, argument = d
    Ball mid = volterra_on_set(E, 0.5);
    CHECK(std::fabs(mid.c - volterra_h(d).c) < 1e-12);

    CHECK_THROWS_AS(volterra_on_set(E, 2.0), std::domain_error);
}

TEST_CASE("discont_on_G truncation") {
    GapSet E0(Rational(0), Rational(1), {{Rational(1, 3), Rational(2, 3)}});
    GapSet E1(Rational(0), Rational(1), {{Rational(1, 9), Rational(2, 9)}});

    // x in every set: all terms vanish (tail radius remains)
    Ball zero = discont_on_G({E0, E1}, 0.75);
    CHECK(zero.c == 0.0);

    // single-set list reduces to volterra_on_set
    Ball single = discont_on_G({E0}, 0.5);
    CHECK(single.c == volterra_on_set(E0, 0.5).c);

    // x in the gap of E0 only: the 3^0 term plus nothing
    Ball both = discont_on_G({E0, E1}, 0.5);
    CHECK(both.c == volterra_on_set(E0, 0.5).c);
}

TEST_CASE("pompeiu_g single-term sanity") {
    PompeiuSpec one;
    one.r = 0.5;
    one.truncation = 1;
    one.q = {Rational(0)};
    Ball g8 = pompeiu_g(one, 8.0);
    CHECK(g8.c == doctest::Approx(1.0).epsilon(1e-12));  // (1/2) * 8^{1/3}

    CHECK(pompeiu_g_prime_lower(one, 1.0, 1) == doctest::Approx(1.0 / 6).epsilon(1e-9));
    CHECK(std::isinf(pompeiu_g_prime_lower(one, 0.0, 1)));
}

TEST_CASE("pompeiu_g determinism and lower-bound monotonicity") {
    auto spec = PompeiuSpec::standard();
    Ball a = pompeiu_g(spec, 0.7311);
    Ball b = pompeiu_g(spec, 0.7311);
    CHECK(a.c == b.c);
    CHECK(a.r == b.r);

    double prev = 0;
    for (int terms : {10, 40, 160, 640}) {
        double cur = pompeiu_g_prime_lower(spec, 0.7311, terms);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("pompeiu enumeration invariants") {
    auto spec = PompeiuSpec::standard();
    CHECK(spec.q.size() >= 4096);
    for (size_t i = 0; i < spec.q.size(); ++i)
        CHECK(rat_abs(spec.q[i]) <= Rational(static_cast<long>(i + 1)));
    // distinct entries (spot on a prefix)
    for (size_t i = 0; i < 64; ++i)
        for (size_t j = i + 1; j < 64; ++j) CHECK(spec.q[i] != spec.q[j]);
}

TEST_CASE("pompeiu_h inverts g") {
    auto spec = PompeiuSpec::standard();
    double y0 = pompeiu_g(spec, 0.0).c;
    CHECK(std::fabs(pompeiu_h(spec, y0, 1e-10)) < 1e-8);

    // strictly increasing on a sampled grid
    double prev = pompeiu_h(spec, -2.0, 1e-10);
    for (int i = 1; i <= 16; ++i) {
        double cur = pompeiu_h(spec, -2.0 + 0.25 * i, 1e-10);
        CHECK(cur > prev);
        prev = cur;
    }

    // difference quotients of h at g(q_1) shrink toward 0: h'(g(q_1)) = 0.
    // At very small scales the inversion tolerance dominates, so each
    // quotient is judged against scale decay plus the tolerance noise floor.
    double z = pompeiu_g(spec, rat_to_double(spec.q[0])).c;
    for (int k = 6; k <= 22; k += 4) {
        double s = std::ldexp(1.0, -k);
        double q = (pompeiu_h(spec, z + s, 1e-13) - pompeiu_h(spec, z - s, 1e-13)) / (2 * s);
        // cube-root flat zone: quotient decays like s^2 until the inversion
        // tolerance noise floor takes over
        CHECK(std::fabs(q) <= 300 * s * s + 1e-12 / s);
    }
}

TEST_CASE("monster with t = 0 vanishes") {
    MonsterSpec spec;
    spec.pompeiu = PompeiuSpec::standard();
    spec.t = 0.0;
    for (double x : {-1.3, 0.2, 0.9}) {
        Ball v = monster(spec, x);
        CHECK(std::fabs(v.c) <= v.r + 1e-12);
    }
}

TEST_CASE("takagi exact values") {
    TakagiSpec spec{4};
    CHECK(takagi(spec, Rational(0)).partial == 0);
    CHECK(takagi(spec, Rational(0)).tail == 0);

    // 1/16: f0 = 1/16, f1 = 1/16, f2 = 0 -> 1/16 + 4/16 = 5/16
    auto v = takagi(spec, Rational(1, 16));
    CHECK(v.partial == Rational(5, 16));
    CHECK(v.tail == 0);

    CHECK(takagi_tooth(0, Rational(1, 16)) == Rational(1, 16));
    CHECK(takagi_tooth(1, Rational(1, 16)) == Rational(1, 16));
    CHECK(takagi_tooth(2, Rational(1, 16)) == Rational(0));

    // non-dyadic input carries the 2^-depth tail bound
    auto w = takagi(spec, Rational(1, 3));
    CHECK(w.tail == rat_pow(Rational(2), -4));
}

TEST_CASE("weierstrass_W") {
    Ball w0 = weierstrass_W(0.0, 24);
    CHECK(w0.contains(2.0));
    Ball w1 = weierstrass_W(1.0, 24);
    CHECK(w1.contains(-2.0));
    for (double x : {0.33, -1.7, 2.94}) {
        Ball w = weierstrass_W(x, 24);
        CHECK(w.mag_hi() <= 2.0 + w.r + 1e-9);
    }
}

TEST_CASE("andy composition") {
    CHECK(andy_gamma(0.0).c == 0.0);
    CHECK(andy_gamma(1.0 / M_PI).contains(-1.0));

    auto spec = AndySpec::standard();
    CHECK(spec.m > 0);
    // range stays in [-1, 1] on a sample sweep
    double peak = 0;
    for (int i = 1; i <= 200; ++i) {
        double x = 0.004 * i;
        peak = std::max(peak, std::fabs(andy_psi(spec, x).c));
    }
    CHECK(peak <= 1.0 + 1e-9);
}
