#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monsterlab/extend.hpp"
#include "monsterlab/monsters.hpp"

using namespace monsterlab;
using namespace monsterlab::extend_ops;

namespace {

SetFunction jets_on(GapSet carrier, int order,
                    const std::function<std::vector<Rational>(const Rational&)>& jet_of) {
    SetFunction f;
    f.carrier = std::move(carrier);
    f.order = order;
    std::vector<Rational> xs = f.carrier.endpoints();
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (auto& x : xs) {
        Jet j;
        j.x = x;
        j.derivs = jet_of(x);
        f.jets.push_back(j);
    }
    f.validate();
    return f;
}

}  // namespace

TEST_CASE("taylor_poly examples") {
    Jet c{Rational(0), {Rational(1), Rational(0), Rational(0)}};
    CHECK(taylor_poly(c, Rational(5)) == 1);

    Jet j{Rational(1), {Rational(1), Rational(2), Rational(2)}};
    CHECK(taylor_poly(j, Rational(2)) == 4);  // 1 + 2 + 1
    CHECK(taylor_poly(j, j.x) == j.derivs[0]);
}

TEST_CASE("q_fn basics") {
    GapSet carrier(Rational(0), Rational(2), {{Rational(1, 2), Rational(1)}});
    // order 1 jets from x^2
    auto f = jets_on(carrier, 1, [](const Rational& x) {
        return std::vector<Rational>{x * x, 2 * x};
    });
    CHECK(q_fn(f, Rational(0), Rational(0)) == 0);
    // n = 1: (f(b)-f(a))/(b-a) - f'(a)
    Rational expect = (Rational(1) - Rational(0)) / Rational(1) - Rational(0);
    CHECK(q_fn(f, Rational(0), Rational(1)) == expect);

    // degree <= n polynomial source: q vanishes off-diagonal
    auto lin = jets_on(carrier, 1, [](const Rational& x) {
        return std::vector<Rational>{3 * x + 1, Rational(3)};
    });
    CHECK(q_fn(lin, Rational(0), Rational(2)) == 0);
}

TEST_CASE("linear interpolation and the sandwich property") {
    GapSet carrier(Rational(0), Rational(3), {{Rational(1), Rational(2)}});
    auto f = jets_on(carrier, 1, [](const Rational& x) {
        return std::vector<Rational>{x * x, 2 * x};
    });
    auto fbar = linear_interpolate(f);
    CHECK(fbar.eval_exact(Rational(3, 2)).c == Rational(5, 2));  // midpoint of gap values 1 and 4

    // quotient through a gap point lies between the endpoint quotients
    Rational x(0);
    Rational qa = (f.value_at(Rational(1)) - Rational(0)) / Rational(1);
    Rational qb = (f.value_at(Rational(2)) - Rational(0)) / Rational(2);
    for (Rational y : {Rational(5, 4), Rational(3, 2), Rational(7, 4)}) {
        Rational q = (fbar.eval_exact(y).c - fbar.eval_exact(x).c) / (y - x);
        CHECK(q >= std::min(qa, qb));
        CHECK(q <= std::max(qa, qb));
    }
}

TEST_CASE("hat_f carries gap slopes on middle thirds") {
    GapSet carrier(Rational(0), Rational(3), {{Rational(0), Rational(3)}});
    // degenerate-hull guard: use [-1, 4] with gap (0,3)
    carrier = GapSet(Rational(-1), Rational(4), {{Rational(0), Rational(3)}});
    auto f = jets_on(carrier, 1, [](const Rational& x) {
        return std::vector<Rational>{x, Rational(1)};
    });
    auto hf = hat_f(f);
    const Jet* left = hf.jet_at(Rational(1));
    const Jet* right = hf.jet_at(Rational(2));
    REQUIRE(left);
    REQUIRE(right);
    CHECK(left->derivs[1] == 1);
    CHECK(right->derivs[1] == 1);
    CHECK(left->derivs[0] == 1);

    auto cf = jets_on(carrier, 1, [](const Rational&) {
        return std::vector<Rational>{Rational(7), Rational(0)};
    });
    auto hcf = hat_f(cf);
    for (auto& j : hcf.jets) CHECK(j.derivs[1] == 0);
}

TEST_CASE("jarnik: matching linear data needs no adjustor") {
    GapSet carrier(Rational(0), Rational(3), {{Rational(1), Rational(2)}});
    auto f = jets_on(carrier, 1, [](const Rational& x) {
        return std::vector<Rational>{2 * x, Rational(2)};
    });
    auto ext = jarnik_extend(f);
    REQUIRE(ext.adjustors.size() == 1);
    CHECK(ext.adjustors[0].h_a == 0);
    CHECK(ext.adjustors[0].h_b == 0);
    for (Rational y : {Rational(5, 4), Rational(3, 2), Rational(9, 5)})
        CHECK(ext.F.eval_exact(y).c == 2 * y);
}

TEST_CASE("jarnik: single gap with opposite endpoint slopes") {
    GapSet carrier(Rational(-1), Rational(2), {{Rational(0), Rational(1)}});
    SetFunction f;
    f.carrier = carrier;
    f.order = 1;
    for (auto& [x, v, d] : std::vector<std::tuple<Rational, Rational, Rational>>{
             {Rational(-1), Rational(0), Rational(1)},
             {Rational(0), Rational(0), Rational(1)},
             {Rational(1), Rational(0), Rational(-1)},
             {Rational(2), Rational(0), Rational(-1)}}) {
        Jet j;
        j.x = x;
        j.derivs = {v, d};
        f.jets.push_back(j);
    }
    f.validate();
    auto ext = jarnik_extend(f);
    const auto& adj = ext.adjustors[0];
    CHECK(adj.slope == 0);
    CHECK(adj.h_a == 1);
    CHECK(adj.h_b == -1);

    // one-sided derivatives exactly from the first/last quadratic pieces
    size_t k = 0;
    const auto& pieces = ext.F.pieces;
    while (pieces[k].lo != adj.a || pieces[k].kind != PiecewiseEval::Piece::Kind::Poly) ++k;
    CHECK(pieces[k].coeffs[1] == 1);
    size_t k2 = k;
    while (pieces[k2].hi != adj.b) ++k2;
    CHECK(pieces[k2].coeffs[1] + 2 * pieces[k2].coeffs[2] * (adj.b - adj.t) == -1);

    // F = f on carrier; g bounded by eps^2
    CHECK(ext.F.eval_exact(Rational(0)).c == 0);
    CHECK(ext.F.eval_exact(Rational(1)).c == 0);
    Rational eps2 = adj.eps * adj.eps;
    for (int i = 1; i < 32; ++i) {
        Rational y(i, 32);
        CHECK(rat_abs(ext.F.eval_exact(y).c) <= eps2);
    }
}

TEST_CASE("whitney step extension on a two-point carrier") {
    GapSet carrier(Rational(0), Rational(1), {{Rational(0), Rational(1)}});
    // hull endpoints are the carrier; jets (0; 0,0) and (1; 1,0)
    SetFunction f;
    f.carrier = carrier;
    f.order = 1;
    Jet a{Rational(0), {Rational(0), Rational(0)}};
    Jet b{Rational(1), {Rational(1), Rational(0)}};
    f.jets = {a, b};
    f.validate();
    auto ext = whitney_extend(f);
    CHECK(ext.eval(0.2).contains(0.0));
    CHECK(ext.eval(0.9).contains(1.0));
    double mid = ext.eval(0.5).c;
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    double prev = -1;
    for (int i = 0; i <= 50; ++i) {
        double v = ext.eval(i / 50.0).c;
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("whitney check separates smooth and ex111 data") {
    GapSet cantor = cantor_ternary(5);
    auto smooth = jets_on(cantor, 2, [](const Rational& x) {
        return std::vector<Rational>{x * x, 2 * x, Rational(2)};
    });
    auto rep = whitney_check(smooth, 1e-3);
    CHECK(!rep.divergent);

    auto ex = ex111_build(7);
    auto rep2 = whitney_check(ex.jets(2), 1e-3);
    CHECK(rep2.divergent);
}

TEST_CASE("ex111 exact structure") {
    auto ex = ex111_build(6);
    CHECK(ex.value_at(Rational(0)) == 0);
    CHECK(ex.value_at(Rational(1)) == Rational(1, 16));
    CHECK(ex.value_at(Rational(1, 3)) == Rational(1, 96));
    CHECK(ex.value_at(Rational(2, 3)) == Rational(5, 96));

    // gap integral over a level-m gap is (1/4) 6^-m
    for (auto& [p, q] : ex.cantor.gaps) {
        Rational w = q - p;
        int m = 0;
        Rational probe(1);
        while (probe != w) {
            probe /= 3;
            ++m;
        }
        CHECK(ex.value_at(q) - ex.value_at(p) == rat_pow(Rational(6), -m) / 4);
    }

    // piecewise evaluator agrees with the recursion at gap midpoints
    for (auto& [p, q] : ex.cantor.gaps) {
        Rational mid = p + (q - p) / 2;
        CHECK(ex.f.eval_exact(mid).c == ex.value_at(mid));
    }

    // spot inequality: adjacent endpoints at the deepest level
    auto a = Rational(1, 729), b = Rational(2, 729);
    Rational ratio = (ex.value_at(b) - ex.value_at(a)) / ((b - a) * (b - a));
    CHECK(ratio > Rational(1, 36) * rat_pow(Rational(3, 2), 5));
}

TEST_CASE("twisted extension wiggles on a wide gap") {
    GapSet carrier(Rational(-1), Rational(2), {{Rational(0), Rational(1)}});
    SetFunction f;
    f.carrier = carrier;
    f.order = 1;
    for (auto& x : {Rational(-1), Rational(0), Rational(1), Rational(2)}) {
        Jet j;
        j.x = x;
        j.derivs = {Rational(0), Rational(0)};
        f.jets.push_back(j);
    }
    f.validate();

    // a cheap nowhere-monotone-at-scale stand-in oscillator for unit scale
    BallFn wiggle = [](double u) {
        return Ball::exact(std::sin(u * 2 * M_PI)) + 0.37 * Ball::exact(std::sin(u * 4.7 * M_PI));
    };
    auto tw = twisted_extend(f, wiggle, 6);
    CHECK(tw.report().ok);

    // carrier values unchanged
    CHECK(tw.eval(0.0).contains(0.0));
    CHECK(tw.eval(1.0).contains(0.0));
    CHECK(tw.eval(-0.5).contains(0.0));

    // squeeze at carrier: quotients of F-hat and F agree within e(y)/(y - x)
    const auto& base = tw.base();
    for (int k = 3; k <= 10; ++k) {
        double y = std::ldexp(1.0, -k);  // approaches carrier point 0 from inside the gap
        double e = y * y * (1 - y) * (1 - y);
        double qF = (base.F.eval(y).c - 0.0) / y;
        double qT = (tw.eval(y).c - 0.0) / y;
        CHECK(std::fabs(qT - qF) <= e / y + 1e-9);
    }
}
