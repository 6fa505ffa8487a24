#pragma once

#include <optional>
#include <vector>

#include "monsterlab/ball.hpp"

namespace monsterlab::evalcore {

// (f(x) - f(y)) / (x - y), outward rounded. The diagonal x = y is excluded.
Ball diff_quotient(const BallFn& f, double x, double y);

// Bisection for f(x) = y on [bracket_lo, bracket_hi] with f strictly
// increasing (caller-asserted). Succeeds once |f(mid) - y| <= tol at ball
// resolution. Throws std::runtime_error("no bracket") when the bracket does
// not straddle y, and ("stall") when the interval stops shrinking certifiably
// before reaching tol.
double invert_monotone(const BallFn& f, double y, double bracket_lo, double bracket_hi, double tol);

struct DiffQuotients {
    double scale;
    Ball right;  // (f(x+s) - f(x)) / s
    Ball left;   // (f(x) - f(x-s)) / s
    Ball sym;    // (f(x+s) - f(x-s)) / 2s
};

// One-sided and symmetric difference quotients at each scale; the caller
// inspects convergence. Scales must be positive and strictly decreasing.
std::vector<DiffQuotients> derivative_estimate(const BallFn& f, double x,
                                               const std::vector<double>& scales);

// Sampled sup - inf of f over (x - d, x + d) at the smallest delta. A lower
// bound on the true oscillation: computed from ball interiors on a finite
// sample, never an upper claim.
double oscillation(const BallFn& f, double x, const std::vector<double>& deltas,
                   int samples_per_window = 128);

// Scan [a,b] on a grid for a certified sign change of f - y, then bisect.
// Returns an x with f(x) close to y, or nullopt when this grid shows no sign
// change. Absence of a find is not a refutation.
std::optional<double> ivp_probe(const BallFn& f, double a, double b, double y, int grid);

}  // namespace monsterlab::evalcore
