#pragma once

#include <string>
#include <vector>

#include "monsterlab/gapset.hpp"
#include "monsterlab/sampled.hpp"

namespace monsterlab::restrict_ops {

using Interval = std::pair<Rational, Rational>;

struct RisingSunResult {
    std::vector<Interval> components;  // the shadow set U, open in [a, b)
    bool includes_a = false;           // whether a itself is shadowed
};

// The rising sun set of the piecewise-linear model of g on [a, b]:
// U = {x in [a,b): g(x) < g(y) for some y in (x, b]}, computed exactly by a
// right-to-left running-max scan. Every component (c,d) satisfies
// g(c) <= g(d).
RisingSunResult rising_sun(const SampledFunction& g, const Rational& a, const Rational& b);

// O(n^2) check straight from the definition, used as the oracle against the
// scan. Candidate endpoints are breakpoints plus every crossing of a segment
// with every later breakpoint value.
RisingSunResult rising_sun_bruteforce(const SampledFunction& g, const Rational& a,
                                      const Rational& b);

struct LipschitzCertificate {
    GapSet P;
    Rational L;
    Rational a_bar;            // sup of the argmax set of f - Lx
    Rational gap_length_sum;   // over all components of U
    Rational bound;            // (f(b) - f(a_bar)) / L
    Rational hull_width;       // b - a_bar
    long pairwise_checked = 0;
    bool negated = false;      // f was decreasing; -f was processed
    bool constant_branch = false;
};

// The sun-lemma construction of a closed set P on which f is L-Lipschitz:
// g = f - Lx, a_bar = sup argmax g, P = [a_bar, b] minus the rising sun set.
// Requires f monotone on the samples and L > |f(b)-f(a)|/(b-a).
LipschitzCertificate lipschitz_restriction(const SampledFunction& f, const Rational& a,
                                           const Rational& b, const Rational& L);

// Exact coverage test: does the union of the open intervals contain [alpha, beta]?
bool interval_cover_check(const std::vector<Interval>& js, const Rational& alpha,
                          const Rational& beta);

// For pairwise disjoint intervals inside (a, b): verifies sum of lengths <= b - a.
bool interval_disjoint_sum(const std::vector<Interval>& js, const Rational& a,
                           const Rational& b);

struct MonotoneRestriction {
    GapSet Q;
    std::vector<std::pair<Rational, Rational>> points;  // surviving (x, f(x))
    std::string branch;  // "monotone", "tree", or "constant"
};

// Filipczak-style refinement: if the samples on P are already monotone, Q = P;
// otherwise a depth-deep binary tree of disjoint intervals with values
// separated across every split, leaving one representative per leaf so the
// restriction is increasing across all surviving pairs. Nodes that cannot be
// split (locally constant at resolution) return the constancy interval.
MonotoneRestriction monotone_restriction(const SampledFunction& f, const GapSet& P, int depth);

struct ModulusReport {
    double max_abs_q = 0;                          // bound M on |q| over sample pairs
    std::vector<std::pair<double, double>> omega;  // (delta, max |q(p)-q(p')| at dist <= delta)
    long pairs = 0;
};

// Finite-resolution modulus of continuity of the quotient map
// q(x,y) = (f(x)-f(y))/(x-y) on Q's samples. No claim beyond the sampled
// lattice.
ModulusReport quotient_uc_scan(const SampledFunction& f, const GapSet& Q,
                               const std::vector<double>& scales, int max_samples = 44);

struct DiffRestriction {
    GapSet Q;
    std::vector<std::pair<Rational, double>> derivative_table;
    std::string branch;  // "monotone+lipschitz" or "level-set"
    bool refined = true; // false when the budget ran out before the omega target
    ModulusReport modulus;
};

struct DiffOptions {
    int level_m = 64;       // minimum carrier size for the constancy branch
    double tol = 1e-2;      // omega target at the smallest scale
    int budget = 64;        // greedy refinement steps
    int min_run = 4;        // monotone-run length triggering the sun-lemma branch
};

// Desk-scale differentiable-restriction pipeline: monotone subinterval ->
// sun-lemma Lipschitz carrier, else a large level set; then greedy sample
// dropping until the quotient modulus meets tol.
DiffRestriction differentiable_restriction(const SampledFunction& f, const Rational& a,
                                           const Rational& b, const DiffOptions& opt = {});

std::string lipschitz_certificate_to_json(const LipschitzCertificate& c);

}  // namespace monsterlab::restrict_ops
