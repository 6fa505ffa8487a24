#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "monsterlab/ball.hpp"
#include "monsterlab/jets.hpp"
#include "monsterlab/piecewise.hpp"

namespace monsterlab::extend_ops {

// Linear interpolation of f across its gaps; exact carrier data elsewhere.
PiecewiseEval linear_interpolate(const SetFunction& f);

// f-bar restricted to hat(Q): the original jets on Q plus order-1 jets on the
// middle-third endpoints whose derivative is the gap's secant slope. Output
// order is 1.
SetFunction hat_f(const SetFunction& f);

// Per-gap adjustor data of the differentiable extension.
struct GapAdjustor {
    int index = 0;  // 1-based, in left-to-right gap order
    Rational a, b;
    Rational slope;      // (f(b) - f(a)) / (b - a)
    Rational ell;        // min(1, b - a)
    Rational eps;        // in (0, 3^-i ell), validated against the sampled window conditions
    Rational s, t;       // inner corners of the two spike profiles
    Rational A, B;       // tent slopes balancing the zero-integral constraints
    Rational h_a, h_b;   // spike heights f'(a) - slope, f'(b) - slope
};

struct JarnikExtension {
    PiecewiseEval F;  // f-bar + g, exact piecewise quadratics on gaps
    std::vector<GapAdjustor> adjustors;
};

// The differentiable extension F = f-bar + g: g vanishes on hat(Q), and on
// each gap integrates a piecewise-linear spike profile whose two lobes have
// exactly zero area. F = f on the carrier samples, D+F(a_i) = f'(a_i) and
// D-F(b_i) = f'(b_i) exactly, |g| <= eps_i^2 on gap i.
JarnikExtension jarnik_extend(const SetFunction& f);

struct C1Report {
    bool ok = false;
    double worst = 0;                                    // discrepancy at the finest scale
    std::optional<Rational> witness;                     // point of failure
    std::vector<std::pair<double, double>> schedule;     // (scale, max discrepancy)
};

// Continuity test of hat_f' at the carrier points: derivative jets of hat(Q)
// compared across shrinking scales. f admits a C^1 extension iff this
// discrepancy vanishes; at finite resolution the finest scale is judged
// against tol.
C1Report c1_criterion(const SetFunction& f, double tol);

struct WhitneyLevel {
    int i = 0;  // checking q_{f^(i)}^{n-i}
    std::vector<std::pair<double, double>> max_by_scale;  // (scale, max |q| at pair distance <= scale)
    bool divergent = false;
};

struct WhitneyReport {
    std::vector<WhitneyLevel> levels;
    bool divergent = false;
};

// The (W_n) probe: magnitudes of the normalized Taylor remainders near the
// diagonal at each scale, flagged divergent when they grow as the pair
// distance shrinks.
WhitneyReport whitney_check(const SetFunction& f, double tol = 1e-3,
                            std::vector<double> scales = {});

// The one-variable C^n extension: on each gap, alpha T^n_a f + beta T^n_b f
// with beta the smooth step of the normalized coordinate. Near each endpoint
// the extension coincides with that endpoint's Taylor polynomial.
PiecewiseEval whitney_extend(const SetFunction& f);

struct Ex111 {
    GapSet cantor;          // depth used for the piece list
    PiecewiseEval f;        // exact quadratic pieces on gaps, enclosures on carrier cells
    int depth = 0;

    // Exact value at a ternary rational (terminating self-similar recursion).
    Rational value_at(const Rational& x) const;
    // Jets (f, f', f'' := 0) on the Cantor endpoints at this depth.
    SetFunction jets(int order = 2) const;
};

// The C^1 function with f' = 0 on the Cantor set whose restriction to any
// perfect subset admits no C^2 extension: f = integral of the gap-triangle
// profile with peak 2^-(n+1) on level-n gaps.
Ex111 ex111_build(int depth);

struct TwistedReport {
    bool ok = false;
    int amplitude_retries = 0;
    std::vector<std::string> failures;  // subintervals still monotone after retries
};

class TwistedExtension {
public:
    TwistedExtension(JarnikExtension base, BallFn monster, int resolution);

    Ball eval(double x) const;
    const TwistedReport& report() const { return report_; }
    const JarnikExtension& base() const { return base_; }

private:
    struct GapTwist {
        Rational a, b;
        double amplitude = 0;   // <= 1, so |F-hat - F| <= envelope
        double arg_scale = 0;
        double bound = 1;       // max |monster| over the mapped range
    };
    Ball envelope(const GapTwist& g, double x) const;
    Ball twist_term(const GapTwist& g, double x) const;
    bool scan_gap(const GapTwist& g, int resolution, std::vector<std::string>* failures) const;

    JarnikExtension base_;
    BallFn monster_;
    std::vector<GapTwist> gaps_;
    TwistedReport report_;
};

// F-hat = F + e * m~: per-gap quartic envelope e(x) = (x-a)^2 (b-x)^2 / (b-a)^3
// times a rescaled monster, leaving carrier values and derivatives intact.
// Non-monotonicity is verified on every dyadic subinterval of each gap to the
// given depth; failed subintervals are reported after capped amplitude
// retries.
TwistedExtension twisted_extend(const SetFunction& f, BallFn monster, int resolution);

}  // namespace monsterlab::extend_ops
