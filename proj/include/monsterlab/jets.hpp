#pragma once

#include <vector>

#include "monsterlab/gapset.hpp"
#include "monsterlab/rational.hpp"

namespace monsterlab {

// Derivative data of orders 0..n at a point; derivs[0] is the value. Jets
// carry exact rationals (a binary64 sample converts exactly), so every
// downstream identity can be checked without rounding.
struct Jet {
    Rational x;
    std::vector<Rational> derivs;

    int order() const { return static_cast<int>(derivs.size()) - 1; }
};

// A function given on a perfect-set carrier by jets at finitely many sample
// points. Every gap endpoint (and both hull endpoints) must carry a jet.
struct SetFunction {
    GapSet carrier;
    std::vector<Jet> jets;  // sorted by x, uniform order
    int order = 1;

    void validate() const;
    const Jet* jet_at(const Rational& x) const;
    Rational value_at(const Rational& x) const { return deriv_at(x, 0); }
    Rational deriv_at(const Rational& x, int k) const;

    // The same carrier with jets shifted down i orders: order becomes n - i.
    SetFunction derivative_shift(int i) const;
};

// Taylor polynomial of the jet evaluated at x, exact.
Rational taylor_poly(const Jet& jet, const Rational& x);

// q_f^n(a,b) = (T_b f(b) - T_a f(b)) / (b-a)^n = (f(b) - T_a f(b)) / (b-a)^n,
// 0 on the diagonal. a and b must carry jets.
Rational q_fn(const SetFunction& f, const Rational& a, const Rational& b);

std::string setfunction_to_json(const SetFunction& f);
SetFunction setfunction_from_json(const std::string& text);

}  // namespace monsterlab
