#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace monsterlab {

namespace detail {

inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

// One unit in the last place at x's magnitude; covers the rounding error of a
// single correctly rounded operation with room to spare.
inline double ulp(double x) {
    double a = std::fabs(x);
    if (a == 0) return std::numeric_limits<double>::denorm_min();
    return up(a) - a;
}

}  // namespace detail

// A certified value: the exact quantity lies in [c - r, c + r]. Every
// operation widens the radius outward past the float rounding error, so
// containment is preserved through arbitrary compositions.
struct Ball {
    double c = 0.0;
    double r = 0.0;

    Ball() = default;
    Ball(double center, double radius) : c(center), r(radius) {
        if (!(radius >= 0)) throw std::invalid_argument("ball: negative radius");
    }

    static Ball exact(double v) { return Ball(v, 0.0); }

    double lo() const { return c - r; }
    double hi() const { return c + r; }
    // Largest and smallest possible |value|.
    double mag_hi() const { return std::fabs(c) + r; }
    double mag_lo() const { return std::max(0.0, std::fabs(c) - r); }
    bool contains(double x) const { return lo() <= x && x <= hi(); }
};

using BallFn = std::function<Ball(double)>;

namespace detail {

inline double widen(double center, double raw_radius, int ulps = 1) {
    double r = raw_radius;
    for (int i = 0; i < ulps; ++i) r = up(r + ulp(center));
    return r;
}

}  // namespace detail

inline Ball operator+(const Ball& a, const Ball& b) {
    double c = a.c + b.c;
    return Ball(c, detail::widen(c, detail::up(a.r + b.r)));
}

inline Ball operator-(const Ball& a) { return Ball(-a.c, a.r); }

inline Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

inline Ball operator*(const Ball& a, const Ball& b) {
    double c = a.c * b.c;
    double raw = std::fabs(a.c) * b.r + std::fabs(b.c) * a.r + a.r * b.r;
    return Ball(c, detail::widen(c, detail::up(raw * (1.0 + 1e-15))));
}

inline Ball operator*(double k, const Ball& b) { return Ball::exact(k) * b; }

inline Ball operator/(const Ball& a, const Ball& b) {
    if (b.mag_lo() <= 0) throw std::domain_error("ball: division by interval containing 0");
    // |a/b - c| <= (|a.c| r_b + |b.c| r_a) / (|b.c| (|b.c| - r_b)), widened.
    double c = a.c / b.c;
    double denom = std::fabs(b.c) * b.mag_lo();
    double raw = (std::fabs(a.c) * b.r + std::fabs(b.c) * a.r) / denom;
    return Ball(c, detail::widen(c, detail::up(raw * (1.0 + 4e-15))));
}

// libm sin/cos/exp/cbrt on glibc are faithfully rounded; two extra ulps keep
// the enclosure sound.
inline Ball ball_sin(const Ball& x) {
    double c = std::sin(x.c);
    double raw = std::min(x.r, 2.0 + std::fabs(c));  // |sin'| <= 1, |sin| <= 1
    Ball out(c, detail::widen(c, raw, 2));
    if (out.r > 1.0 + std::fabs(c)) out.r = 1.0 + std::fabs(c);
    return out;
}

inline Ball ball_cos(const Ball& x) {
    double c = std::cos(x.c);
    double raw = std::min(x.r, 2.0 + std::fabs(c));
    Ball out(c, detail::widen(c, raw, 2));
    if (out.r > 1.0 + std::fabs(c)) out.r = 1.0 + std::fabs(c);
    return out;
}

inline Ball ball_exp(const Ball& x) {
    double c = std::exp(x.c);
    double raw = std::exp(x.hi()) - std::exp(x.lo());
    return Ball(c, detail::widen(c, detail::up(raw + 2 * detail::ulp(c)), 2));
}

inline Ball ball_cbrt(const Ball& x) {
    double c = std::cbrt(x.c);
    double raw = std::cbrt(x.hi()) - std::cbrt(x.lo());  // cbrt is increasing
    return Ball(c, detail::widen(c, detail::up(raw + 2 * detail::ulp(c)), 2));
}

inline Ball ball_abs(const Ball& x) {
    if (x.lo() >= 0) return x;
    if (x.hi() <= 0) return -x;
    double hi = x.mag_hi();
    return Ball(hi / 2, detail::widen(hi / 2, hi / 2));
}

inline bool certainly_less(const Ball& a, const Ball& b) { return a.hi() < b.lo(); }
inline bool overlap(const Ball& a, const Ball& b) { return !(a.hi() < b.lo() || b.hi() < a.lo()); }

}  // namespace monsterlab
