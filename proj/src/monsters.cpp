#include "monsterlab/monsters.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "monsterlab/config.hpp"
#include "monsterlab/evalcore.hpp"

namespace monsterlab::monsters {

namespace {

// sin(1/x) on a ball argument not containing 0.
Ball sin_recip(const Ball& x) {
    return ball_sin(Ball::exact(1.0) / x);
}

}  // namespace

Ball volterra_h(double x) { return volterra_h(Ball::exact(x)); }

Ball volterra_h(const Ball& x) {
    if (x.contains(0.0)) {
        if (x.r == 0) return Ball::exact(0.0);
        double m = x.mag_hi();
        return Ball(0.0, detail::widen(m, m * m));  // |h| <= x^2
    }
    return x * x * sin_recip(x);
}

Ball volterra_h_prime(double x) { return volterra_h_prime(Ball::exact(x)); }

Ball volterra_h_prime(const Ball& x) {
    if (x.contains(0.0)) {
        if (x.r == 0) return Ball::exact(0.0);
        double m = x.mag_hi();
        return Ball(0.0, detail::widen(m, 2 * m + 1));  // |h'| <= 2|x| + 1
    }
    return 2.0 * x * sin_recip(x) - ball_cos(Ball::exact(1.0) / x);
}

Ball psi(double x) {
    if (x == 0) return Ball::exact(0.0);
    return Ball::exact(x) + 2.0 * volterra_h(x);
}

Ball phi(double x) {
    if (x == 0) return Ball::exact(0.0);
    Ball xb = Ball::exact(x);
    Ball x2 = xb * xb;
    return x2 * x2 * (Ball::exact(2.0) + sin_recip(xb));
}

Ball eta(double x) {
    if (x == 0) return Ball::exact(0.0);
    return ball_exp(Ball::exact(-3.0 * x)) * volterra_h(x);
}

Ball eta_prime(double x) {
    if (x == 0) return Ball::exact(0.0);
    Ball xb = Ball::exact(x);
    Ball s = sin_recip(xb);
    Ball c = ball_cos(Ball::exact(1.0) / xb);
    Ball inner = Ball::exact(-3.0) * xb * xb * s + 2.0 * xb * s - c;
    return ball_exp(Ball::exact(-3.0) * xb) * inner;
}

double volterra_zero() {
    static const double d = [] {
        // h'(0.2) < 0 < h'(0.4); bisect the certified bracket.
        double lo = 0.2, hi = 0.4;
        for (int it = 0; it < 80; ++it) {
            double mid = lo + (hi - lo) / 2;
            Ball v = volterra_h_prime(mid);
            if (v.hi() < 0)
                lo = mid;
            else if (v.lo() > 0)
                hi = mid;
            else
                break;
        }
        return lo + (hi - lo) / 2;
    }();
    return d;
}

Ball volterra_on_set(const GapSet& E, double x) {
    Rational xr = rat_from_double(x);
    if (xr < E.lo || E.hi < xr) throw std::domain_error("volterra_on_set: x outside hull");
    const auto* gap = E.gap_containing(xr);
    if (!gap) return Ball::exact(0.0);
    double a = rat_to_double(gap->first);
    double b = rat_to_double(gap->second);
    Ball ab(a, detail::ulp(a));
    Ball bb(b, detail::ulp(b));
    Ball xb = Ball::exact(x);
    Ball dist = (x - a <= b - x) ? xb - ab : bb - xb;
    Ball arg = 2.0 * Ball::exact(volterra_zero()) * dist / (bb - ab);
    return volterra_h(arg);
}

Ball discont_on_G(const std::vector<GapSet>& sets, double x) {
    Ball acc = Ball::exact(0.0);
    double w = 1.0;
    Rational xr = rat_from_double(x);
    for (const auto& E : sets) {
        if (!(xr < E.lo) && !(E.hi < xr)) acc = acc + w * volterra_on_set(E, x);
        w /= 3.0;
    }
    // remaining terms bounded by 1 each: sum_{n>=len} 3^-n = (3/2) 3^-len
    double tail = 1.5 * w;
    return Ball(acc.c, detail::widen(acc.c, acc.r + tail));
}

// ---- Pompeiu ----

PompeiuSpec PompeiuSpec::standard(double r, int truncation, int enum_size) {
    PompeiuSpec spec;
    spec.r = r;
    if (truncation <= 0) {
        // tail(N) ~ r^N (N + |x|) below 2^-precision for |x| <= 8
        int n = 8;
        double tail = 1;
        const double target = std::ldexp(1.0, -precision_bits());
        while (n < 4096 && tail > target) {
            ++n;
            tail = std::pow(r, n + 1) * (n + 12) / ((1 - r) * (1 - r));
        }
        spec.truncation = n;
    } else {
        spec.truncation = truncation;
    }

    // Diagonal enumeration of the rationals: heights |p| + q = 1, 2, ...,
    // reduced fractions, positive before negative. The |q_i| <= i filter is
    // enforced with a deferral queue (it fires only in degenerate setups).
    spec.q.reserve(enum_size);
    std::deque<Rational> pending;
    long height = 1;
    long num = 0, den = 1;  // current candidate p/q within the height scan
    auto next_candidate = [&]() -> Rational {
        while (true) {
            if (height == 1) {
                height = 2;
                return Rational(0);
            }
            for (; den < height; ++den) {
                long p = height - den;
                if (std::gcd(p, den) != 1) continue;
                if (num == 0) {
                    num = p;
                    return Rational(p, den);
                }
                num = 0;
                Rational v(-(height - den), den);
                ++den;
                return v;
            }
            ++height;
            den = 1;
            num = 0;
        }
    };
    for (int i = 1; static_cast<int>(spec.q.size()) < enum_size; ++i) {
        Rational bound(i);
        bool took = false;
        for (auto it = pending.begin(); it != pending.end(); ++it) {
            if (rat_abs(*it) <= bound) {
                spec.q.push_back(*it);
                pending.erase(it);
                took = true;
                break;
            }
        }
        if (took) continue;
        while (true) {
            Rational c = next_candidate();
            if (rat_abs(c) <= bound) {
                spec.q.push_back(c);
                break;
            }
            pending.push_back(c);
        }
    }
    spec.validate();
    return spec;
}

void PompeiuSpec::validate() const {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("pompeiu: r must be in (0,1)");
    if (truncation <= 0) throw std::invalid_argument("pompeiu: truncation must be positive");
    for (size_t i = 0; i < q.size(); ++i) {
        if (rat_abs(q[i]) > Rational(static_cast<long>(i + 1)))
            throw std::invalid_argument("pompeiu: |q_i| <= i violated at i = " + std::to_string(i + 1));
    }
}

namespace {

struct QTable {
    std::vector<double> val;
    std::vector<double> rad;
};

const QTable& q_doubles(const PompeiuSpec& spec) {
    thread_local const PompeiuSpec* cached_spec = nullptr;
    thread_local QTable table;
    if (cached_spec != &spec || table.val.size() != spec.q.size()) {
        table.val.clear();
        table.rad.clear();
        table.val.reserve(spec.q.size());
        table.rad.reserve(spec.q.size());
        for (const auto& qi : spec.q) {
            double v = rat_to_double(qi);
            table.val.push_back(v);
            table.rad.push_back(2 * detail::ulp(v));
        }
        cached_spec = &spec;
    }
    return table;
}

double pompeiu_tail(const PompeiuSpec& spec, double absx, int n) {
    // sum_{i>N} r^i (|x| + i + 1), closed form, widened
    double r = spec.r;
    double rn1 = std::pow(r, n + 1);
    double geo = rn1 / (1 - r);
    double igeo = rn1 * ((n + 1) - n * r) / ((1 - r) * (1 - r));
    return ((absx + 1) * geo + igeo) * (1 + 1e-12);
}

}  // namespace

Ball pompeiu_g(const PompeiuSpec& spec, double x) {
    int n = std::min<int>(spec.truncation, static_cast<int>(spec.q.size()));
    const QTable& qt = q_doubles(spec);
    Ball acc = Ball::exact(0.0);
    Ball xb = Ball::exact(x);
    double w = spec.r;
    for (int i = 0; i < n; ++i) {
        acc = acc + w * ball_cbrt(xb - Ball(qt.val[i], qt.rad[i]));
        w *= spec.r;
    }
    double tail = pompeiu_tail(spec, std::fabs(x), n);
    return Ball(acc.c, detail::widen(acc.c, acc.r + tail));
}

double pompeiu_g_prime_lower(const PompeiuSpec& spec, double x, int terms) {
    int n = std::min<int>(terms, static_cast<int>(spec.q.size()));
    Rational xr = rat_from_double(x);
    const QTable& qt = q_doubles(spec);
    double sum = 0;
    double w = spec.r;
    for (int i = 0; i < n; ++i) {
        if (spec.q[i] == xr) return std::numeric_limits<double>::infinity();
        double dx = std::fabs(x - qt.val[i]);
        sum += w / (3.0 * std::cbrt(dx) * std::cbrt(dx));
        w *= spec.r;
    }
    return sum * (1 - 1e-12);  // keep it a lower bound
}

Ball pompeiu_h_ball(const PompeiuSpec& spec, double y, double tol) {
    double B = 1;
    while (true) {
        Ball glo = pompeiu_g(spec, -B), ghi = pompeiu_g(spec, B);
        if (glo.hi() < y && y < ghi.lo()) break;
        B *= 2;
        if (B > std::ldexp(1.0, 40)) throw std::runtime_error("pompeiu_h: bracket growth cap exceeded");
    }
    double lo = -B, hi = B;
    while (hi - lo > tol) {
        double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        Ball gm = pompeiu_g(spec, mid);
        if (gm.hi() < y)
            lo = mid;
        else if (gm.lo() > y)
            hi = mid;
        else
            break;  // stalled at ball resolution; the bracket still encloses
    }
    double mid = lo + (hi - lo) / 2;
    return Ball(mid, detail::widen(mid, (hi - lo) / 2));
}

double pompeiu_h(const PompeiuSpec& spec, double y, double tol) {
    return pompeiu_h_ball(spec, y, tol).c;
}

// ---- Monster ----

namespace {

constexpr double kHTol = 1e-13;

Ball monster_at(const PompeiuSpec& spec, double t, double x) {
    return pompeiu_h_ball(spec, x - t, kHTol) - pompeiu_h_ball(spec, x, kHTol);
}

double h_secant(const PompeiuSpec& spec, double y, double s) {
    Ball a = pompeiu_h_ball(spec, y + s, kHTol);
    Ball b = pompeiu_h_ball(spec, y - s, kHTol);
    return (a.c - b.c) / (2 * s);
}

}  // namespace

MonsterSpec make_monster_spec(const PompeiuSpec& spec, double t, int want, double margin) {
    MonsterSpec out;
    out.pompeiu = spec;
    out.t = t;

    const int certify_terms = std::min<int>(2000, static_cast<int>(spec.q.size()));
    const double est_scale = 1e-6;
    for (int k = 0; k < 1200 && static_cast<int>(out.witnesses.size()) < want; ++k) {
        double d = -2.0 + 0.0033711 * k;
        double hd = h_secant(spec, d, est_scale);
        double hp = h_secant(spec, t + d, est_scale);
        double hm = h_secant(spec, d - t, est_scale);
        if (!(hd > hp + margin) || !(hd > hm + margin)) continue;

        // the actual sign pattern across the scales the suite will assert
        bool ok = true;
        for (int kk = 12; kk <= 26 && ok; kk += 2) {
            double s = std::ldexp(1.0, -kk);
            Ball qp = (monster_at(spec, t, t + d + s) - monster_at(spec, t, t + d - s)) /
                      Ball::exact(2 * s);
            Ball qm = (monster_at(spec, t, d + s) - monster_at(spec, t, d - s)) /
                      Ball::exact(2 * s);
            if (!(qp.c > 2 * qp.r) || !(-qm.c > 2 * qm.r)) ok = false;
        }
        if (!ok) continue;

        WitnessCertificate w;
        w.d = d;
        w.h_prime_d = hd;
        w.h_prime_t_plus_d = hp;
        w.h_prime_d_minus_t = hm;
        w.z_plus = pompeiu_h(spec, t + d, kHTol);
        w.z_minus = pompeiu_h(spec, d - t, kHTol);
        const QTable& qt = q_doubles(spec);
        auto nearest = [&](double z, int& idx, double& dist) {
            idx = 1;
            dist = std::fabs(z - qt.val[0]);
            for (size_t i = 1; i < qt.val.size(); ++i) {
                double dd = std::fabs(z - qt.val[i]);
                if (dd < dist) {
                    dist = dd;
                    idx = static_cast<int>(i + 1);
                }
            }
        };
        nearest(w.z_plus, w.nearest_q_plus, w.dist_q_plus);
        nearest(w.z_minus, w.nearest_q_minus, w.dist_q_minus);
        w.gprime_lower_plus = pompeiu_g_prime_lower(spec, w.z_plus, certify_terms);
        w.gprime_lower_minus = pompeiu_g_prime_lower(spec, w.z_minus, certify_terms);
        out.witnesses.push_back(w);
    }
    return out;
}

Ball monster(const MonsterSpec& spec, double x) { return monster_at(spec.pompeiu, spec.t, x); }

// ---- Takagi ----

Rational takagi_tooth(int n, const Rational& x) {
    Rational scaled = x * rat_pow(Rational(8), n);
    Int k = rat_floor(scaled + Rational(1, 2));  // nearest lattice index
    return rat_abs(scaled - Rational(k)) / rat_pow(Rational(8), n);
}

TakagiValue takagi(const TakagiSpec& spec, const Rational& x) {
    if (spec.depth < 0) throw std::invalid_argument("takagi: negative depth");
    TakagiValue out;
    out.partial = Rational(0);
    Rational weight(1);
    for (int n = 0; n <= spec.depth; ++n) {
        out.partial += weight * takagi_tooth(n, x);
        weight *= 4;
    }
    // Dyadic lattice points of level <= depth have every later tooth equal 0.
    Rational probe = x * rat_pow(Rational(8), spec.depth);
    if (rat_den(probe) == 1)
        out.tail = Rational(0);
    else
        out.tail = rat_pow(Rational(2), -spec.depth);
    return out;
}

// ---- Weierstrass ----

Ball weierstrass_W(double x, int terms) {
    if (terms < 1) throw std::invalid_argument("weierstrass_W: terms must be >= 1");
    Ball acc = Ball::exact(0.0);
    bool integer_x = (x == std::floor(x)) && std::fabs(x) < std::ldexp(1.0, 52);
    bool odd_x = integer_x && (std::fmod(std::fabs(x), 2.0) == 1.0);
    double pow13 = 1;
    for (int n = 0; n < terms; ++n) {
        double w = std::ldexp(1.0, -n);
        if (integer_x) {
            // 13^n odd, so cos(13^n pi x) = +1 for even x, -1 for odd x.
            acc = acc + Ball::exact(odd_x ? -w : w);
        } else {
            bool exact13 = pow13 <= std::ldexp(1.0, 52);
            double arg = pow13 * M_PI * x;
            double arg_rad = std::fabs(arg) * 4e-16;
            if (!exact13 || arg_rad >= 2.0) {
                acc = acc + Ball(0.0, w);
            } else {
                acc = acc + w * ball_cos(Ball(arg, arg_rad));
            }
        }
        if (pow13 <= std::ldexp(1.0, 52)) pow13 *= 13;
    }
    double tail = std::ldexp(1.0, -terms + 1);
    return Ball(acc.c, detail::widen(acc.c, acc.r + tail));
}

// ---- Andy's composition ----

Ball andy_gamma(double x) {
    if (x == 0) return Ball::exact(0.0);
    return ball_cos(Ball::exact(1.0) / Ball::exact(x));
}

AndySpec AndySpec::standard() {
    AndySpec spec;
    spec.pompeiu = PompeiuSpec::standard();
    spec.b = pompeiu_g(spec.pompeiu, rat_to_double(spec.pompeiu.q[0])).c;
    // h' surrogate range over [-1-b, 1-b] stays within ~max 1/g'; sample it
    double peak = 0;
    for (int i = 0; i <= 64; ++i) {
        double u = -1.0 + 2.0 * i / 64;
        peak = std::max(peak, std::fabs(h_secant(spec.pompeiu, u, 1e-6)));
    }
    spec.m = peak > 0 ? 1.0 / (1.25 * peak) : 1.0;
    return spec;
}

Ball andy_psi(const AndySpec& spec, double x) {
    Ball u = andy_gamma(x);
    // phi(u) = m h'(u - b); secant surrogate at a fixed scale, with the
    // quotient ball radius carried through.
    double s = 1e-8;
    Ball a = pompeiu_h_ball(spec.pompeiu, u.c - spec.b + s, kHTol);
    Ball b = pompeiu_h_ball(spec.pompeiu, u.c - spec.b - s, kHTol);
    Ball sec = (a - b) / Ball::exact(2 * s);
    return spec.m * sec;
}

}  // namespace monsterlab::monsters
