#pragma once

#include <string>
#include <vector>

#include "monsterlab/gapset.hpp"
#include "monsterlab/rational.hpp"

namespace monsterlab {

// Finite carrier for a continuous function: exact sample positions with
// certified values, piecewise-linear between samples. The linear model is
// what makes the rising-sun set exactly computable.
struct SampledFunction {
    GapSet domain;
    std::vector<std::pair<Rational, RatBall>> samples;  // strictly increasing x
    std::string interp = "linear";

    void validate() const;

    // Piecewise-linear value at x (centers only; x must be inside the sample
    // hull).
    Rational value_at(const Rational& x) const;

    static SampledFunction from_values(std::vector<std::pair<Rational, Rational>> pts,
                                       GapSet domain);
    // Uniform grid over [lo, hi] through an exact evaluator.
    template <typename F>
    static SampledFunction tabulate(const Rational& lo, const Rational& hi, int n, F&& f) {
        std::vector<std::pair<Rational, Rational>> pts;
        pts.reserve(n + 1);
        for (int i = 0; i <= n; ++i) {
            Rational x = lo + (hi - lo) * Rational(i, n);
            pts.emplace_back(x, f(x));
        }
        return from_values(std::move(pts), GapSet(lo, hi));
    }
};

std::string sampled_to_json(const SampledFunction& f);
SampledFunction sampled_from_json(const std::string& text);

}  // namespace monsterlab
