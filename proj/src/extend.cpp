#include "monsterlab/extend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monsterlab::extend_ops {

namespace {

using Piece = PiecewiseEval::Piece;

Piece poly_piece(Rational lo, Rational hi, std::vector<Rational> coeffs) {
    Piece p;
    p.lo = std::move(lo);
    p.hi = std::move(hi);
    p.kind = Piece::Kind::Poly;
    p.coeffs = std::move(coeffs);
    return p;
}

Piece carrier_piece(Rational lo, Rational hi) {
    Piece p;
    p.lo = std::move(lo);
    p.hi = std::move(hi);
    p.kind = Piece::Kind::Carrier;
    return p;
}

void append_carrier_values(PiecewiseEval& pe, const SetFunction& f) {
    pe.carrier_values.clear();
    pe.carrier_values.reserve(f.jets.size());
    for (const Jet& j : f.jets) pe.carrier_values.emplace_back(j.x, j.derivs[0]);
}

}  // namespace

PiecewiseEval linear_interpolate(const SetFunction& f) {
    f.validate();
    PiecewiseEval pe;
    auto comps = f.carrier.components();
    size_t gi = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].first < comps[c].second)
            pe.pieces.push_back(carrier_piece(comps[c].first, comps[c].second));
        if (gi < f.carrier.gaps.size()) {
            const auto& [a, b] = f.carrier.gaps[gi++];
            Rational fa = f.value_at(a), fb = f.value_at(b);
            Rational slope = (fb - fa) / (b - a);
            pe.pieces.push_back(poly_piece(a, b, {fa, slope}));
        }
    }
    append_carrier_values(pe, f);
    return pe;
}

SetFunction hat_f(const SetFunction& f) {
    f.validate();
    if (f.order < 1) throw std::invalid_argument("hat_f: order-1 jets required");
    SetFunction out;
    out.carrier = hat(f.carrier);
    out.order = 1;
    for (const Jet& j : f.jets) {
        Jet nj;
        nj.x = j.x;
        nj.derivs = {j.derivs[0], j.derivs[1]};
        out.jets.push_back(std::move(nj));
    }
    for (const auto& [a, b] : f.carrier.gaps) {
        Rational fa = f.value_at(a), fb = f.value_at(b);
        Rational slope = (fb - fa) / (b - a);
        Rational w = (b - a) / 3;
        Jet left, right;
        left.x = a + w;
        left.derivs = {fa + slope * w, slope};
        right.x = b - w;
        right.derivs = {fb - slope * w, slope};
        out.jets.push_back(std::move(left));
        out.jets.push_back(std::move(right));
    }
    std::sort(out.jets.begin(), out.jets.end(), [](const Jet& a, const Jet& b) { return a.x < b.x; });
    out.validate();
    return out;
}

JarnikExtension jarnik_extend(const SetFunction& f) {
    f.validate();
    if (f.order < 1) throw std::invalid_argument("jarnik_extend: order-1 jets required");

    JarnikExtension out;
    auto comps = f.carrier.components();
    size_t gi = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].first < comps[c].second)
            out.F.pieces.push_back(carrier_piece(comps[c].first, comps[c].second));
        if (gi >= f.carrier.gaps.size()) continue;

        const auto [a, b] = f.carrier.gaps[gi];
        int i = static_cast<int>(gi) + 1;
        ++gi;

        GapAdjustor adj;
        adj.index = i;
        adj.a = a;
        adj.b = b;
        Rational fa = f.value_at(a), fb = f.value_at(b);
        adj.slope = (fb - fa) / (b - a);
        adj.h_a = f.deriv_at(a, 1) - adj.slope;
        adj.h_b = f.deriv_at(b, 1) - adj.slope;
        adj.ell = std::min(Rational(1), b - a);

        // eps: half the largest value passing the one-sided quotient windows,
        // capped by 3^-i ell. A sample at distance delta from the endpoint
        // violating the 3^-i quotient condition forces eps below delta.
        Rational cap = rat_pow(Rational(3), -i) * adj.ell;
        Rational limit = cap;
        Rational tol3 = rat_pow(Rational(3), -i);
        for (const Jet& j : f.jets) {
            if (j.x < a) {
                Rational q = (j.derivs[0] - fa) / (j.x - a);
                if (rat_abs(f.deriv_at(a, 1) - q) >= tol3) limit = std::min(limit, a - j.x);
            } else if (j.x > b) {
                Rational q = (j.derivs[0] - fb) / (j.x - b);
                if (rat_abs(f.deriv_at(b, 1) - q) >= tol3) limit = std::min(limit, j.x - b);
            }
        }
        adj.eps = limit / 2;
        if (!(adj.eps > 0))
            throw std::runtime_error("jarnik_extend: eps condition unverifiable at gap " +
                                     std::to_string(i));
        Rational eps2 = adj.eps * adj.eps;

        // left spike on [a, a+eps^2]
        Rational wa = std::min(eps2 / (rat_abs(adj.h_a) + 1), eps2 / 2);
        adj.s = a + wa;
        Rational E = a + eps2;
        Rational tw = E - adj.s;  // tent width
        adj.A = Rational(-2) * adj.h_a * wa / (tw * tw);
        Rational mid1 = adj.s + tw / 2;
        Rational g_s = adj.h_a * wa / 2;
        Rational g_m1 = g_s + adj.A * (tw / 2) * (tw / 2) / 2;

        out.F.pieces.push_back(poly_piece(
            a, adj.s, {fa, adj.slope + adj.h_a, -adj.h_a / (2 * wa)}));
        out.F.pieces.push_back(poly_piece(
            adj.s, mid1, {fa + adj.slope * wa + g_s, adj.slope, adj.A / 2}));
        out.F.pieces.push_back(poly_piece(
            mid1, E,
            {fa + adj.slope * (mid1 - a) + g_m1, adj.slope + adj.A * (E - mid1), -adj.A / 2}));

        // flat middle
        Rational Ep = b - eps2;
        out.F.pieces.push_back(poly_piece(E, Ep, {fa + adj.slope * eps2, adj.slope}));

        // right spike on [b-eps^2, b]
        Rational wb = std::min(eps2 / (rat_abs(adj.h_b) + 1), eps2 / 2);
        adj.t = b - wb;
        Rational tw2 = adj.t - Ep;
        adj.B = Rational(-2) * adj.h_b * wb / (tw2 * tw2);
        Rational mid2 = Ep + tw2 / 2;
        Rational g_m2 = adj.B * (tw2 / 2) * (tw2 / 2) / 2;
        Rational g_t = adj.B * tw2 * tw2 / 4;

        out.F.pieces.push_back(poly_piece(
            Ep, mid2, {fa + adj.slope * (Ep - a), adj.slope, adj.B / 2}));
        out.F.pieces.push_back(poly_piece(
            mid2, adj.t,
            {fa + adj.slope * (mid2 - a) + g_m2, adj.slope + adj.B * (adj.t - mid2), -adj.B / 2}));
        out.F.pieces.push_back(poly_piece(
            adj.t, b, {fa + adj.slope * (adj.t - a) + g_t, adj.slope, adj.h_b / (2 * wb)}));

        out.adjustors.push_back(std::move(adj));
    }
    append_carrier_values(out.F, f);
    return out;
}

C1Report c1_criterion(const SetFunction& f, double tol) {
    SetFunction hf = hat_f(f);
    C1Report rep;
    std::vector<std::pair<double, double>> pts;  // (x, derivative)
    pts.reserve(hf.jets.size());
    for (const Jet& j : hf.jets)
        pts.emplace_back(rat_to_double(j.x), rat_to_double(j.derivs[1]));

    double width = rat_to_double(hf.carrier.hi - hf.carrier.lo);
    double min_gap = width;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        min_gap = std::min(min_gap, pts[i + 1].first - pts[i].first);

    rep.ok = true;
    size_t witness_idx = 0;
    for (int k = 0; k <= 40; ++k) {
        double delta = width * std::ldexp(1.0, -k);
        if (delta < min_gap) break;
        double worst = 0;
        size_t wit = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            for (size_t j = i + 1; j < pts.size() && pts[j].first - pts[i].first <= delta; ++j) {
                double disc = std::fabs(pts[i].second - pts[j].second);
                if (disc > worst) {
                    worst = disc;
                    wit = i;
                }
            }
        }
        rep.schedule.emplace_back(delta, worst);
        rep.worst = worst;
        witness_idx = wit;
    }
    if (!rep.schedule.empty() && rep.schedule.back().second > tol) {
        rep.ok = false;
        rep.witness = hf.jets[witness_idx].x;
    }
    return rep;
}

WhitneyReport whitney_check(const SetFunction& f, double tol, std::vector<double> scales) {
    f.validate();
    WhitneyReport rep;
    double width = rat_to_double(f.carrier.hi - f.carrier.lo);
    if (scales.empty())
        for (int k = 2; k <= 14; ++k) scales.push_back(width * std::ldexp(1.0, -k));

    for (int i = 0; i <= f.order; ++i) {
        SetFunction fi = f.derivative_shift(i);
        std::vector<std::pair<double, double>> pairs;  // (distance, |q|)
        for (size_t p = 0; p < fi.jets.size(); ++p) {
            for (size_t q = p + 1; q < fi.jets.size(); ++q) {
                Rational qv = q_fn(fi, fi.jets[p].x, fi.jets[q].x);
                pairs.emplace_back(rat_to_double(fi.jets[q].x - fi.jets[p].x),
                                   std::fabs(rat_to_double(qv)));
            }
        }
        WhitneyLevel lvl;
        lvl.i = i;
        // per-band maxima: pairs with scale_{k+1} < distance <= scale_k, so a
        // growth of |q| toward the diagonal is visible against the coarse bands
        std::vector<double> band(scales.size(), 0.0);
        for (auto& [d, q] : pairs) {
            size_t k = 0;
            while (k + 1 < scales.size() && d <= scales[k + 1]) ++k;
            if (d <= scales[k]) band[k] = std::max(band[k], q);
        }
        for (size_t k = 0; k < scales.size(); ++k) lvl.max_by_scale.emplace_back(scales[k], band[k]);
        double coarse = 0, fine = 0;
        for (size_t k = 0; k < band.size(); ++k) {
            if (band[k] > 0) {
                coarse = band[k];
                break;
            }
        }
        for (size_t k = band.size(); k-- > 0;) {
            if (band[k] > 0) {
                fine = band[k];
                break;
            }
        }
        lvl.divergent = fine > std::max(tol, 4 * coarse);
        rep.divergent = rep.divergent || lvl.divergent;
        rep.levels.push_back(std::move(lvl));
    }
    return rep;
}

PiecewiseEval whitney_extend(const SetFunction& f) {
    f.validate();
    PiecewiseEval pe;
    auto comps = f.carrier.components();
    size_t gi = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].first < comps[c].second)
            pe.pieces.push_back(carrier_piece(comps[c].first, comps[c].second));
        if (gi < f.carrier.gaps.size()) {
            const auto& [a, b] = f.carrier.gaps[gi++];
            Piece p;
            p.lo = a;
            p.hi = b;
            p.kind = Piece::Kind::Blend;
            p.blend_a = *f.jet_at(a);
            p.blend_b = *f.jet_at(b);
            pe.pieces.push_back(std::move(p));
        }
    }
    append_carrier_values(pe, f);
    return pe;
}

// ---- ex111 ----

namespace {

const Rational kTotalMass(1, 16);  // integral of the triangle profile over [0,1]

Rational ex111_value(const Rational& x, int guard) {
    if (guard > 220) throw std::invalid_argument("ex111 value_at: x is not a ternary rational");
    if (x <= 0) return Rational(0);
    if (x >= 1) return kTotalMass;
    Rational third(1, 3), two_thirds(2, 3);
    if (x <= third) return ex111_value(3 * x, guard + 1) / 6;
    if (x >= two_thirds) return kTotalMass - ex111_value(3 * (1 - x), guard + 1) / 6;
    // central gap: profile (3/2) dist(t, {1/3, 2/3})
    Rational half(1, 2);
    if (x <= half) {
        Rational d = x - third;
        return kTotalMass / 6 + Rational(3, 4) * d * d;
    }
    Rational d = two_thirds - x;
    return kTotalMass - kTotalMass / 6 - Rational(3, 4) * d * d;
}

}  // namespace

Rational Ex111::value_at(const Rational& x) const { return ex111_value(x, 0); }

SetFunction Ex111::jets(int order) const {
    SetFunction f;
    f.carrier = cantor;
    f.order = order;
    std::vector<Rational> pts;
    for (auto& [u, v] : cantor.components()) {
        pts.push_back(u);
        if (v != u) pts.push_back(v);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (auto& x : pts) {
        Jet j;
        j.x = x;
        j.derivs.assign(order + 1, Rational(0));
        j.derivs[0] = value_at(x);
        f.jets.push_back(std::move(j));
    }
    f.validate();
    return f;
}

Ex111 ex111_build(int depth) {
    if (depth < 1 || depth > 16) throw std::invalid_argument("ex111_build: depth must be in 1..16");
    Ex111 out;
    out.depth = depth;
    out.cantor = cantor_ternary(depth);

    auto level_of = [&](const Rational& len) {
        Rational p(1, 3);
        for (int m = 1; m <= depth; ++m, p /= 3)
            if (len == p) return m;
        throw std::logic_error("ex111: gap of unexpected length");
    };

    auto comps = out.cantor.components();
    size_t gi = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].first < comps[c].second)
            out.f.pieces.push_back(carrier_piece(comps[c].first, comps[c].second));
        if (gi >= out.cantor.gaps.size()) continue;
        const auto [p, q] = out.cantor.gaps[gi++];
        int m = level_of(q - p);
        Rational slope = rat_pow(Rational(3), m) / rat_pow(Rational(2), m);  // profile slope
        Rational Fp = out.value_at(p), Fq = out.value_at(q);
        Rational mid = p + (q - p) / 2;
        Rational w2 = q - mid;
        // rising half: F(p) + slope (x-p)^2 / 2
        out.f.pieces.push_back(poly_piece(p, mid, {Fp, Rational(0), slope / 2}));
        // falling half: F(q) - slope (q-x)^2 / 2 expanded around mid
        out.f.pieces.push_back(poly_piece(
            mid, q, {Fq - slope * w2 * w2 / 2, slope * w2, -slope / 2}));
    }
    std::vector<Rational> pts;
    for (auto& [u, v] : out.cantor.components()) {
        pts.push_back(u);
        pts.push_back(v);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (auto& x : pts) out.f.carrier_values.emplace_back(x, out.value_at(x));
    return out;
}

// ---- twisted extension ----

TwistedExtension::TwistedExtension(JarnikExtension base, BallFn monster, int resolution)
    : base_(std::move(base)), monster_(std::move(monster)) {
    if (resolution < 1 || resolution > 12)
        throw std::invalid_argument("twisted_extend: resolution must be in 1..12");
    for (const auto& adj : base_.adjustors) {
        GapTwist g;
        g.a = adj.a;
        g.b = adj.b;
        g.amplitude = 0.9;
        g.arg_scale = std::ldexp(1.0, resolution + 3);
        gaps_.push_back(g);
    }
    report_.ok = true;
    for (auto& g : gaps_) {
        bool ok = false;
        for (int attempt = 0; attempt < 6; ++attempt) {
            if (attempt > 0) {
                g.amplitude = std::min(1.0, g.amplitude * 1.6);
                g.arg_scale *= 2;
                ++report_.amplitude_retries;
            }
            // range bound for the rescaling
            g.bound = 1e-300;
            for (int i = 0; i <= 96; ++i)
                g.bound = std::max(g.bound, monster_(g.arg_scale * i / 96.0).mag_hi());
            if (scan_gap(g, resolution, nullptr)) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            report_.ok = false;
            scan_gap(g, resolution, &report_.failures);
        }
    }
}

Ball TwistedExtension::envelope(const GapTwist& g, double x) const {
    double a = rat_to_double(g.a), b = rat_to_double(g.b);
    Ball xa = Ball::exact(x) - Ball(a, detail::ulp(a));
    Ball bx = Ball(b, detail::ulp(b)) - Ball::exact(x);
    Ball w = Ball(b - a, 2 * detail::ulp(b - a));
    return xa * xa * bx * bx / (w * w * w);
}

Ball TwistedExtension::twist_term(const GapTwist& g, double x) const {
    double a = rat_to_double(g.a), b = rat_to_double(g.b);
    double arg = g.arg_scale * (x - a) / (b - a);
    Ball m = monster_(arg);
    Ball scaled = (g.amplitude / g.bound) * m;
    // |m~| <= 1 keeps |F-hat - F| <= envelope; clamp the enclosure
    double lo = std::max(-1.0, scaled.lo()), hi = std::min(1.0, scaled.hi());
    if (lo > hi) lo = hi;
    Ball clamped((lo + hi) / 2, (hi - lo) / 2 + detail::ulp(hi));
    return envelope(g, x) * clamped;
}

bool TwistedExtension::scan_gap(const GapTwist& g, int resolution,
                                std::vector<std::string>* failures) const {
    double a = rat_to_double(g.a), b = rat_to_double(g.b);
    bool all_ok = true;
    for (int d = 0; d <= resolution; ++d) {
        long cells = 1L << d;
        for (long j = 0; j < cells; ++j) {
            double lo = a + (b - a) * static_cast<double>(j) / static_cast<double>(cells);
            double hi = a + (b - a) * static_cast<double>(j + 1) / static_cast<double>(cells);
            const int n = 9;
            bool has_up = false, has_down = false;
            Ball prev = eval(lo + (hi - lo) * 0.5 / n);
            for (int k = 1; k < n; ++k) {
                Ball cur = eval(lo + (hi - lo) * (k + 0.5) / n);
                if (cur.lo() > prev.hi()) has_up = true;
                if (cur.hi() < prev.lo()) has_down = true;
                prev = cur;
            }
            if (!(has_up && has_down)) {
                all_ok = false;
                if (failures)
                    failures->push_back("gap [" + rat_str(g.a) + "," + rat_str(g.b) +
                                        "] depth " + std::to_string(d) + " cell " +
                                        std::to_string(j));
                else
                    return false;
            }
        }
    }
    return all_ok;
}

Ball TwistedExtension::eval(double x) const {
    Rational xr = rat_from_double(x);
    for (const auto& g : gaps_) {
        if (g.a < xr && xr < g.b) return base_.F.eval(x) + twist_term(g, x);
    }
    return base_.F.eval(x);
}

TwistedExtension twisted_extend(const SetFunction& f, BallFn monster, int resolution) {
    return TwistedExtension(jarnik_extend(f), std::move(monster), resolution);
}

}  // namespace monsterlab::extend_ops
