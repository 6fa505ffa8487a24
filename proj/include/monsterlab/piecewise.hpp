#pragma once

#include <string>
#include <vector>

#include "monsterlab/ball.hpp"
#include "monsterlab/jets.hpp"
#include "monsterlab/rational.hpp"

namespace monsterlab {

// An evaluator for an extension F: exact polynomial closed forms on gap
// pieces, data enclosures on carrier pieces, smooth-step blends of Taylor
// polynomials for the C^n extension.
struct PiecewiseEval {
    struct Piece {
        enum class Kind { Poly, Carrier, Blend };
        Rational lo, hi;
        Kind kind = Kind::Poly;
        // Poly: coefficients in the (x - lo) basis.
        std::vector<Rational> coeffs;
        // Blend: alpha T_a + beta T_b with beta = psi((x-a)/(b-a)).
        Jet blend_a, blend_b;
    };

    std::vector<Piece> pieces;  // contiguous, sorted by lo
    // Carrier data: exact at these points; between them the evaluator
    // returns the linear interpolation widened by the endpoint difference
    // (a data enclosure, not a claim about unsampled carrier points).
    std::vector<std::pair<Rational, Rational>> carrier_values;

    // Exact where the data allows it (poly pieces and carrier samples).
    RatBall eval_exact(const Rational& x) const;
    Ball eval(double x) const;

    Rational hull_lo() const { return pieces.front().lo; }
    Rational hull_hi() const { return pieces.back().hi; }
};

// The C^infinity step used by the blend pieces: 0 on (-inf, 1/3], 1 on
// [2/3, +inf), nondecreasing, built from the standard bump quotient.
double smooth_step(double u);
Ball smooth_step_ball(const Ball& u);

std::string piecewise_to_json(const PiecewiseEval& pe);
PiecewiseEval piecewise_from_json(const std::string& text);

}  // namespace monsterlab
