#pragma once

#include <vector>

#include "monsterlab/ball.hpp"
#include "monsterlab/gapset.hpp"
#include "monsterlab/rational.hpp"

namespace monsterlab::monsters {

// ---- Volterra's example and its calculus relatives ----

// x^2 sin(1/x), 0 at 0. Differentiable everywhere, derivative discontinuous
// at 0.
Ball volterra_h(double x);
Ball volterra_h(const Ball& x);

// 2x sin(1/x) - cos(1/x), 0 at 0.
Ball volterra_h_prime(double x);
Ball volterra_h_prime(const Ball& x);

Ball psi(double x);        // x + 2x^2 sin(1/x); psi'(0) = 1, monotone on no interval at 0
Ball phi(double x);        // x^4 (2 + sin(1/x)); proper minimum at 0 without sign change of phi'
Ball eta(double x);        // e^{-3x} x^2 sin(1/x); eta' misses its infimum on [0, 1/3]
Ball eta_prime(double x);

// A zero of volterra_h_prime inside (0.2, 0.4), located once by certified
// bisection. Any zero in (0,1) serves.
double volterra_zero();

// The Volterra variant supported on the complement of E: 0 on E, and
// h(2 d dist(x,{a,b}) / (b-a)) on each bounded gap (a,b). x must lie in the
// hull of E.
Ball volterra_on_set(const GapSet& E, double x);

// Truncation of sum 3^{-n} f_{E_n}: geometric tail radius included. Sets
// whose hull does not contain x contribute 0.
Ball discont_on_G(const std::vector<GapSet>& sets, double x);

// ---- Pompeiu's strictly increasing function with g' = inf on a dense set ----

struct PompeiuSpec {
    double r = 0.5;                // geometric weight, in (0,1)
    int truncation = 0;            // series terms used for the center
    std::vector<Rational> q;       // enumeration of a dense set, |q_i| <= i (1-based)

    // Default enumeration: rationals in diagonal order (by |p|+q, reduced,
    // positive before negative) filtered so |q_i| <= i. Truncation 0 derives
    // the term count from the working precision.
    static PompeiuSpec standard(double r = 0.5, int truncation = 0, int enum_size = 4096);

    void validate() const;
};

// Partial sum of sum_i r^i (x - q_i)^{1/3} with the tail radius
// sum_{i>N} r^i (|x| + i + 1).
Ball pompeiu_g(const PompeiuSpec& spec, double x);

// sum_{i<=terms} r^i (1/3) (x - q_i)^{-2/3}: every term is positive, so this
// is a valid lower bound on g'(x). Returns +infinity when x hits some q_i,
// i <= terms, exactly.
double pompeiu_g_prime_lower(const PompeiuSpec& spec, double x, int terms);

// Inverse of g by certified bisection over an automatically grown bracket.
// The ball version returns the final bracket as an enclosure of g^{-1}(y).
Ball pompeiu_h_ball(const PompeiuSpec& spec, double y, double tol);
double pompeiu_h(const PompeiuSpec& spec, double y, double tol);

// ---- The differentiable monster f(x) = h(x - t) - h(x) ----

// Per-witness report. The certified content is the partial-sum lower bound
// on g' at the preimages of t+d and d-t (large lower bound = h' certifiably
// small there); the h' estimates and sign claims are numerical evidence.
struct WitnessCertificate {
    double d = 0;
    double h_prime_d = 0;          // secant estimate of h'(d)
    double h_prime_t_plus_d = 0;   // secant estimate of h'(t+d)
    double h_prime_d_minus_t = 0;  // secant estimate of h'(d-t)
    double z_plus = 0;             // g^{-1}(t+d)
    double z_minus = 0;            // g^{-1}(d-t)
    int nearest_q_plus = 0;        // enumeration index nearest to z_plus (1-based)
    int nearest_q_minus = 0;
    double dist_q_plus = 0;
    double dist_q_minus = 0;
    double gprime_lower_plus = 0;  // partial-sum lower bound on g' at z_plus
    double gprime_lower_minus = 0;
};

struct MonsterSpec {
    PompeiuSpec pompeiu;
    double t = 0;
    std::vector<WitnessCertificate> witnesses;  // the screened set D with reports
};

// Screens a deterministic candidate grid for witnesses d with the estimated
// h'(d) exceeding both h'(t+d) and h'(d-t) by `margin`, then keeps those
// whose multi-scale quotients show the sign pattern. The residual-set shift
// of the underlying construction is not finitely decidable; this screening
// is the recorded surrogate.
MonsterSpec make_monster_spec(const PompeiuSpec& spec, double t, int want = 8,
                              double margin = 0.25);

Ball monster(const MonsterSpec& spec, double x);

// ---- Takagi-type nowhere differentiable function ----

struct TakagiSpec {
    int depth = 16;  // series truncation
};

struct TakagiValue {
    Rational partial;  // sum_{n<=depth} 4^n f_n(x), exact
    Rational tail;     // |true value - partial| <= tail
};

// f_n(x) = dist(x, 8^{-n} Z), evaluated exactly.
Rational takagi_tooth(int n, const Rational& x);
TakagiValue takagi(const TakagiSpec& spec, const Rational& x);

// ---- Weierstrass's monster ----

// sum_{n<terms} 2^{-n} cos(13^n pi x) with geometric tail radius 2^{-terms+1}.
// Integer x uses the parity of x exactly (13^n is odd); otherwise terms whose
// argument can no longer be formed reliably in binary64 are enclosed by
// their full range.
Ball weierstrass_W(double x, int terms);

// ---- Composition of derivatives that is not Baire class one ----

Ball andy_gamma(double x);  // cos(1/x), 0 at 0

struct AndySpec {
    PompeiuSpec pompeiu;
    double b = 0;  // a zero of h': b = g(q_1)
    double m = 0;  // scale keeping the range inside [-1,1]
    static AndySpec standard();
};

// psi = phi o gamma with phi(u) = m h'(u - b); h' is realised by a fixed
// small-scale secant of the certified inverse (a demo-grade surrogate, the
// true h' being a pointwise limit).
Ball andy_psi(const AndySpec& spec, double x);

}  // namespace monsterlab::monsters
