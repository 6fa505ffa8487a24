#include "monsterlab/evalcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monsterlab::evalcore {

Ball diff_quotient(const BallFn& f, double x, double y) {
    if (x == y) throw std::invalid_argument("diff_quotient: x = y is excluded");
    return (f(x) - f(y)) / Ball::exact(x - y);
}

double invert_monotone(const BallFn& f, double y, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("invert_monotone: empty bracket");
    if (!(tol > 0)) throw std::invalid_argument("invert_monotone: tol must be positive");
    Ball flo = f(lo), fhi = f(hi);
    Ball yb = Ball::exact(y);
    // The bracket must straddle y at ball resolution.
    if (flo.lo() > yb.hi() || fhi.hi() < yb.lo()) throw std::runtime_error("no bracket");

    const int max_iters = 256;
    for (int it = 0; it < max_iters; ++it) {
        double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;  // bracket at float resolution
        Ball fm = f(mid);
        if (std::fabs(fm.c - y) <= tol) return mid;
        if (fm.hi() < y)
            lo = mid;
        else if (fm.lo() > y)
            hi = mid;
        else
            throw std::runtime_error("stall");
    }
    double mid = lo + (hi - lo) / 2;
    if (std::fabs(f(mid).c - y) <= tol) return mid;
    throw std::runtime_error("stall");
}

std::vector<DiffQuotients> derivative_estimate(const BallFn& f, double x,
                                               const std::vector<double>& scales) {
    for (size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0)) throw std::invalid_argument("derivative_estimate: scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1]))
            throw std::invalid_argument("derivative_estimate: scales must be strictly decreasing");
    }
    std::vector<DiffQuotients> out;
    out.reserve(scales.size());
    Ball fx = f(x);
    for (double s : scales) {
        DiffQuotients d;
        d.scale = s;
        Ball fp = f(x + s), fm = f(x - s);
        d.right = (fp - fx) / Ball::exact(s);
        d.left = (fx - fm) / Ball::exact(s);
        d.sym = (fp - fm) / Ball::exact(2 * s);
        out.push_back(d);
    }
    return out;
}

double oscillation(const BallFn& f, double x, const std::vector<double>& deltas,
                   int samples_per_window) {
    for (size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0)) throw std::invalid_argument("oscillation: deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("oscillation: deltas must be decreasing");
    }
    if (deltas.empty()) return 0.0;
    double d = deltas.back();
    // Certified interior values only: max of lower ends minus min of upper
    // ends, so the result never exceeds the true oscillation.
    double max_lo = -std::numeric_limits<double>::infinity();
    double min_hi = std::numeric_limits<double>::infinity();
    int n = std::max(2, samples_per_window);
    for (int i = 0; i < n; ++i) {
        double t = x - d + 2 * d * (i + 0.5) / n;
        Ball v = f(t);
        max_lo = std::max(max_lo, v.lo());
        min_hi = std::min(min_hi, v.hi());
    }
    return std::max(0.0, max_lo - min_hi);
}

std::optional<double> ivp_probe(const BallFn& f, double a, double b, double y, int grid) {
    if (!(a < b) || grid < 2) throw std::invalid_argument("ivp_probe: bad interval or grid");
    auto g = [&](double t) { return f(t) - Ball::exact(y); };
    double step = (b - a) / grid;
    double prev_x = a;
    Ball prev = g(a);
    if (prev.mag_hi() <= step * 1e-9) return a;
    for (int i = 1; i <= grid; ++i) {
        double xi = (i == grid) ? b : a + i * step;
        Ball cur = g(xi);
        bool sign_change = (prev.hi() < 0 && cur.lo() > 0) || (prev.lo() > 0 && cur.hi() < 0);
        if (sign_change) {
            // Bisect the certified bracket.
            double lo = prev_x, hi = xi;
            bool increasing = prev.hi() < 0;
            for (int it = 0; it < 200 && lo + (hi - lo) / 2 > lo && lo + (hi - lo) / 2 < hi; ++it) {
                double mid = lo + (hi - lo) / 2;
                Ball fm = g(mid);
                if (fm.lo() > 0) {
                    (increasing ? hi : lo) = mid;
                } else if (fm.hi() < 0) {
                    (increasing ? lo : hi) = mid;
                } else {
                    break;  // within ball resolution of y
                }
            }
            return lo + (hi - lo) / 2;
        }
        if (cur.mag_hi() <= step * 1e-9) return xi;
        prev = cur;
        prev_x = xi;
    }
    return std::nullopt;
}

}  // namespace monsterlab::evalcore
