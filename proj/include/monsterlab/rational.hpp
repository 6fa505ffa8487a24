#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace monsterlab {

// Exact arithmetic. The rational adaptor keeps gcd(|num|, den) = 1 and
// den > 0, which is exactly the contract the rest of the code relies on.
// Expression templates are off so results deduce to the plain value types.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

// b^e for integer e (e may be negative).
inline Rational rat_pow(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? b : Rational(1) / b;
    long n = e > 0 ? e : -e;
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// Exact conversion; every finite double is a dyadic rational.
inline Rational rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational: non-finite double");
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    Int num = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= rat_pow(Rational(2), exp);
    else if (exp < 0)
        r /= rat_pow(Rational(2), -exp);
    return r;
}

inline double rat_to_double(const Rational& r) { return static_cast<double>(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Int rat_floor(const Rational& r) {
    Int q = rat_num(r) / rat_den(r);
    if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

// "p/q" (or plain "p") with optional sign.
inline Rational rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("rational: cannot parse \"" + s + "\"");
    }
}

inline std::string rat_str(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// A certified rational value: the exact quantity lies in [c - r, c + r].
// All arithmetic here is exact, so radii only enter through explicit tail
// bounds supplied by the constructions.
struct RatBall {
    Rational c;
    Rational r;

    RatBall() : c(0), r(0) {}
    explicit RatBall(Rational center, Rational radius = Rational(0))
        : c(std::move(center)), r(std::move(radius)) {
        if (r < 0) throw std::invalid_argument("ratball: negative radius");
    }

    Rational lo() const { return c - r; }
    Rational hi() const { return c + r; }
    bool contains(const Rational& x) const { return lo() <= x && x <= hi(); }
};

inline RatBall operator+(const RatBall& a, const RatBall& b) { return RatBall(a.c + b.c, a.r + b.r); }
inline RatBall operator-(const RatBall& a, const RatBall& b) { return RatBall(a.c - b.c, a.r + b.r); }
inline RatBall operator*(const Rational& k, const RatBall& b) { return RatBall(k * b.c, rat_abs(k) * b.r); }

// True only when every point of a is below every point of b.
inline bool certainly_less(const RatBall& a, const RatBall& b) { return a.hi() < b.lo(); }
inline bool overlap(const RatBall& a, const RatBall& b) { return !(a.hi() < b.lo() || b.hi() < a.lo()); }

}  // namespace monsterlab
