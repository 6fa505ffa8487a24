#include "monsterlab/restrict.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace monsterlab::restrict_ops {

namespace {

struct Breakpoints {
    std::vector<Rational> x;
    std::vector<Rational> v;
};

// Piecewise-linear model of f restricted to [a, b]; a and b become
// breakpoints with interpolated values.
Breakpoints clip_model(const SampledFunction& f, const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("restrict: need a < b");
    f.validate();
    if (a < f.samples.front().first || f.samples.back().first < b)
        throw std::invalid_argument("restrict: [a,b] outside sample hull");
    Breakpoints bp;
    bp.x.push_back(a);
    bp.v.push_back(f.value_at(a));
    for (auto& [x, val] : f.samples) {
        if (a < x && x < b) {
            bp.x.push_back(x);
            bp.v.push_back(val.c);
        }
    }
    bp.x.push_back(b);
    bp.v.push_back(f.value_at(b));
    return bp;
}

struct Piece {
    Rational lo, hi;
    bool closed_left;
};

RisingSunResult assemble(const std::vector<Piece>& pieces, const Rational& a) {
    RisingSunResult out;
    size_t i = 0;
    while (i < pieces.size()) {
        Rational c = pieces[i].lo;
        Rational d = pieces[i].hi;
        bool closed = pieces[i].closed_left;
        size_t j = i + 1;
        while (j < pieces.size() && pieces[j].lo == d && pieces[j].closed_left) {
            d = pieces[j].hi;
            ++j;
        }
        if (closed && c == a) out.includes_a = true;
        out.components.emplace_back(c, d);
        i = j;
    }
    return out;
}

}  // namespace

RisingSunResult rising_sun(const SampledFunction& g, const Rational& a, const Rational& b) {
    Breakpoints bp = clip_model(g, a, b);
    size_t m = bp.x.size() - 1;
    std::vector<Rational> suffix_max(m + 1);
    suffix_max[m] = bp.v[m];
    for (size_t i = m; i-- > 0;) suffix_max[i] = std::max(bp.v[i], suffix_max[i + 1]);

    std::vector<Piece> pieces;
    for (size_t i = 0; i < m; ++i) {
        const Rational &x0 = bp.x[i], &x1 = bp.x[i + 1];
        const Rational &v0 = bp.v[i], &v1 = bp.v[i + 1];
        const Rational& fut = suffix_max[i + 1];  // max of g over [x1, b]
        if (v1 > v0) {
            pieces.push_back({x0, x1, true});
        } else if (v1 == v0) {
            if (v0 < fut) pieces.push_back({x0, x1, true});
        } else {  // decreasing; fut >= v1 always
            if (v0 < fut) {
                pieces.push_back({x0, x1, true});
            } else if (v0 == fut) {
                pieces.push_back({x0, x1, false});
            } else if (fut > v1) {
                Rational xi = x0 + (v0 - fut) * (x1 - x0) / (v0 - v1);
                pieces.push_back({xi, x1, false});
            }
        }
    }
    RisingSunResult out = assemble(pieces, a);
    // Lemma check, exact on the model: g(c) <= g(d) for every component.
    for (auto& [c, d] : out.components) {
        if (g.value_at(c) > g.value_at(d))
            throw std::logic_error("rising_sun: endpoint inequality violated");
    }
    return out;
}

RisingSunResult rising_sun_bruteforce(const SampledFunction& g, const Rational& a,
                                      const Rational& b) {
    Breakpoints bp = clip_model(g, a, b);
    size_t m = bp.x.size() - 1;

    std::set<Rational> cand(bp.x.begin(), bp.x.end());
    for (size_t i = 0; i < m; ++i) {
        const Rational &v0 = bp.v[i], &v1 = bp.v[i + 1];
        if (v0 == v1) continue;
        for (size_t j = i + 1; j <= m; ++j) {
            const Rational& w = bp.v[j];
            if ((w > std::min(v0, v1)) && (w < std::max(v0, v1))) {
                Rational xi = bp.x[i] + (v0 - w) * (bp.x[i + 1] - bp.x[i]) / (v0 - v1);
                cand.insert(xi);
            }
        }
    }
    std::vector<Rational> cs(cand.begin(), cand.end());

    auto value = [&](const Rational& x) -> Rational {
        auto it = std::upper_bound(bp.x.begin(), bp.x.end(), x);
        size_t i = static_cast<size_t>(it - bp.x.begin());
        if (i > 0 && bp.x[i - 1] == x) return bp.v[i - 1];
        --i;
        Rational w = (x - bp.x[i]) / (bp.x[i + 1] - bp.x[i]);
        return bp.v[i] + w * (bp.v[i + 1] - bp.v[i]);
    };
    // x in U iff g rises immediately to the right or some later breakpoint
    // value strictly exceeds g(x).
    auto in_u = [&](const Rational& x) -> bool {
        if (!(x < b)) return false;
        size_t seg = 0;
        while (seg + 1 < bp.x.size() && !(x < bp.x[seg + 1])) ++seg;
        if (bp.v[seg + 1] > bp.v[seg]) return true;  // slope > 0 at x+
        Rational gx = value(x);
        for (size_t j = seg + 1; j < bp.x.size(); ++j)
            if (bp.v[j] > gx) return true;
        return false;
    };

    // entity walk: candidate points and the intervals between them. The
    // closed_left flag records whether the left candidate itself is in U, so
    // the shared assembly merges across a junction only when the junction
    // point is shadowed too.
    std::vector<Piece> pieces;
    for (size_t k = 0; k + 1 < cs.size(); ++k) {
        bool pt = in_u(cs[k]);
        Rational mid = cs[k] + (cs[k + 1] - cs[k]) / 2;
        if (in_u(mid)) pieces.push_back({cs[k], cs[k + 1], pt});
    }
    return assemble(pieces, a);
}

LipschitzCertificate lipschitz_restriction(const SampledFunction& f, const Rational& a,
                                           const Rational& b, const Rational& L) {
    if (!(L > 0)) throw std::invalid_argument("lipschitz_restriction: L must be positive");
    Breakpoints bp = clip_model(f, a, b);
    size_t m = bp.x.size() - 1;

    bool nondecr = true, noninc = true;
    for (size_t i = 0; i < m; ++i) {
        if (bp.v[i + 1] < bp.v[i]) nondecr = false;
        if (bp.v[i + 1] > bp.v[i]) noninc = false;
    }
    if (!nondecr && !noninc)
        throw std::invalid_argument("lipschitz_restriction: f not monotone at sample resolution");

    LipschitzCertificate cert;
    cert.L = L;

    // constancy short-circuit: any flat run is already Lipschitz
    for (size_t i = 0; i < m; ++i) {
        if (bp.v[i] == bp.v[i + 1]) {
            size_t j = i + 1;
            while (j < m && bp.v[j + 1] == bp.v[i]) ++j;
            cert.P = GapSet(bp.x[i], bp.x[j]);
            cert.a_bar = bp.x[i];
            cert.gap_length_sum = Rational(0);
            cert.bound = Rational(0);
            cert.hull_width = bp.x[j] - bp.x[i];
            cert.constant_branch = true;
            cert.pairwise_checked = static_cast<long>((j - i + 1) * (j - i) / 2);
            return cert;
        }
    }

    cert.negated = noninc;
    std::vector<Rational> v = bp.v;
    if (cert.negated)
        for (auto& t : v) t = -t;

    Rational secant = (v[m] - v[0]) / (b - a);
    if (!(L > rat_abs(secant)))
        throw std::invalid_argument("lipschitz_restriction: L too small (must exceed the secant slope)");

    // g = f - Lx on the model; the argmax of a PL function sits at a breakpoint
    std::vector<Rational> gv(m + 1);
    for (size_t i = 0; i <= m; ++i) gv[i] = v[i] - L * bp.x[i];
    Rational gmax = gv[0];
    for (auto& t : gv) gmax = std::max(gmax, t);
    size_t abar_idx = 0;
    for (size_t i = 0; i <= m; ++i)
        if (gv[i] == gmax) abar_idx = i;
    cert.a_bar = bp.x[abar_idx];

    std::vector<std::pair<Rational, Rational>> gpts;
    for (size_t i = abar_idx; i <= m; ++i) gpts.emplace_back(bp.x[i], gv[i]);
    SampledFunction gs = SampledFunction::from_values(
        std::move(gpts), GapSet(cert.a_bar, b));
    RisingSunResult sun = rising_sun(gs, cert.a_bar, b);

    cert.gap_length_sum = Rational(0);
    for (auto& [c, d] : sun.components) cert.gap_length_sum += d - c;
    Rational f_abar = v[abar_idx];
    cert.bound = (v[m] - f_abar) / L;
    cert.hull_width = b - cert.a_bar;
    if (!(cert.gap_length_sum <= cert.bound) || !(cert.bound < cert.hull_width))
        throw std::logic_error("lipschitz_restriction: certificate chain violated");

    // P as a gap set; a trailing component may touch b, in which case the
    // isolated right endpoint is dropped and the hull shrinks.
    Rational hull_hi = b;
    std::vector<std::pair<Rational, Rational>> gaps;
    for (auto& [c, d] : sun.components) {
        if (d == b)
            hull_hi = c;
        else
            gaps.emplace_back(c, d);
    }
    if (!(cert.a_bar < hull_hi)) throw std::logic_error("lipschitz_restriction: empty carrier");
    cert.P = GapSet(cert.a_bar, hull_hi, std::move(gaps));

    // exhaustive pairwise Lipschitz check over carrier points
    std::vector<Rational> pts = cert.P.endpoints();
    for (size_t i = abar_idx; i <= m; ++i)
        if (cert.P.contains(bp.x[i])) pts.push_back(bp.x[i]);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> fv(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        fv[i] = f.value_at(pts[i]);
        if (cert.negated) fv[i] = -fv[i];
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (rat_abs(fv[j] - fv[i]) > L * (pts[j] - pts[i]))
                throw std::logic_error("lipschitz_restriction: pairwise check failed");
            ++cert.pairwise_checked;
        }
    }
    return cert;
}

bool interval_cover_check(const std::vector<Interval>& js, const Rational& alpha,
                          const Rational& beta) {
    for (auto& [a, b] : js)
        if (!(a < b)) throw std::invalid_argument("interval_cover_check: malformed interval");
    if (!(alpha <= beta)) throw std::invalid_argument("interval_cover_check: alpha > beta");
    Rational cur = alpha;
    while (true) {
        bool found = false;
        Rational best = cur;
        for (auto& [a, b] : js) {
            if (a < cur && cur < b && b > best) {
                best = b;
                found = true;
            }
        }
        if (!found) return false;
        if (best > beta) return true;
        cur = best;
    }
}

bool interval_disjoint_sum(const std::vector<Interval>& js, const Rational& a,
                           const Rational& b) {
    std::vector<Interval> sorted = js;
    for (auto& [lo, hi] : sorted)
        if (!(lo < hi)) throw std::invalid_argument("interval_disjoint_sum: malformed interval");
    std::sort(sorted.begin(), sorted.end());
    Rational sum(0);
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].first < a || b < sorted[i].second)
            throw std::invalid_argument("interval_disjoint_sum: interval outside (a,b)");
        if (i > 0 && sorted[i].first < sorted[i - 1].second)
            throw std::invalid_argument("interval_disjoint_sum: intervals not disjoint");
        sum += sorted[i].second - sorted[i].first;
    }
    return sum <= b - a;
}

// ---- monotone restriction ----

namespace {

struct TreeCtx {
    const std::vector<std::pair<Rational, Rational>>* pts;  // (x, value), sorted by x
    Rational width;
    bool constant_abort = false;
    Interval constant_interval;
    std::vector<size_t> leaves;
};

// Splits [lo, hi] (index range) into two index ranges with separated values,
// the smaller-value block to the left. Returns false when no strictly
// increasing pair exists at this node.
bool split_node(TreeCtx& ctx, size_t lo, size_t hi, int level, size_t& l0, size_t& h0,
                size_t& l1, size_t& h1) {
    const auto& pts = *ctx.pts;
    // best increasing pair: maximize v_j - min_{i<j} v_i
    size_t best_i = lo, best_j = lo, min_i = lo;
    Rational best_gain(0);
    for (size_t j = lo + 1; j <= hi; ++j) {
        if (pts[j].second - pts[min_i].second > best_gain) {
            best_gain = pts[j].second - pts[min_i].second;
            best_i = min_i;
            best_j = j;
        }
        if (pts[j].second < pts[min_i].second) min_i = j;
    }
    if (!(best_gain > 0)) return false;
    Rational c0 = pts[best_i].second + best_gain / 3;
    Rational c1 = pts[best_j].second - best_gain / 3;
    Rational cap = ctx.width * rat_pow(Rational(2), -(level + 1));

    // high block around best_j: consecutive samples with value > c1
    l1 = h1 = best_j;
    while (l1 > lo && pts[l1 - 1].second > c1 && l1 - 1 > best_i &&
           pts[h1].first - pts[l1 - 1].first <= cap)
        --l1;
    while (h1 < hi && pts[h1 + 1].second > c1 && pts[h1 + 1].first - pts[l1].first <= cap)
        ++h1;
    // low block around best_i, strictly left of the high block
    l0 = h0 = best_i;
    while (l0 > lo && pts[l0 - 1].second < c0 && pts[h0].first - pts[l0 - 1].first <= cap)
        --l0;
    while (h0 + 1 < l1 && pts[h0 + 1].second < c0 && pts[h0 + 1].first - pts[l0].first <= cap)
        ++h0;
    return true;
}

void build_tree(TreeCtx& ctx, size_t lo, size_t hi, int depth, int level) {
    if (ctx.constant_abort) return;
    const auto& pts = *ctx.pts;
    if (depth == 0) {
        ctx.leaves.push_back(lo + (hi - lo) / 2);
        return;
    }
    if (lo == hi) {
        ctx.constant_abort = true;
        ctx.constant_interval = {pts[lo].first, pts[hi].first};
        return;
    }
    size_t l0, h0, l1, h1;
    if (!split_node(ctx, lo, hi, level, l0, h0, l1, h1)) {
        ctx.constant_abort = true;
        ctx.constant_interval = {pts[lo].first, pts[hi].first};
        return;
    }
    build_tree(ctx, l0, h0, depth - 1, level + 1);
    build_tree(ctx, l1, h1, depth - 1, level + 1);
}

GapSet points_to_gapset(const std::vector<std::pair<Rational, Rational>>& pts,
                        const std::string& gen) {
    if (pts.size() < 2) {
        Rational x = pts.empty() ? Rational(0) : pts[0].first;
        return GapSet(x, x + Rational(1, 1000000), {}, gen);
    }
    std::vector<std::pair<Rational, Rational>> gaps;
    for (size_t i = 0; i + 1 < pts.size(); ++i) gaps.emplace_back(pts[i].first, pts[i + 1].first);
    return GapSet(pts.front().first, pts.back().first, std::move(gaps), gen);
}

}  // namespace

MonotoneRestriction monotone_restriction(const SampledFunction& f, const GapSet& P, int depth) {
    if (depth < 0 || depth > 20) throw std::invalid_argument("monotone_restriction: bad depth");
    f.validate();
    std::vector<std::pair<Rational, Rational>> pts;
    for (auto& [x, v] : f.samples)
        if (P.contains(x)) pts.emplace_back(x, v.c);
    if (pts.size() < 2)
        throw std::invalid_argument("monotone_restriction: fewer than 2 samples on P");

    MonotoneRestriction out;
    bool nondecr = true, noninc = true;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].second < pts[i].second) nondecr = false;
        if (pts[i + 1].second > pts[i].second) noninc = false;
    }
    if (nondecr || noninc) {
        out.Q = P;
        out.points = pts;
        out.branch = "monotone";
        return out;
    }

    TreeCtx ctx;
    ctx.pts = &pts;
    ctx.width = pts.back().first - pts.front().first;
    build_tree(ctx, 0, pts.size() - 1, depth, 0);
    if (ctx.constant_abort) {
        out.branch = "constant";
        Rational lo = ctx.constant_interval.first, hi = ctx.constant_interval.second;
        if (!(lo < hi)) hi = lo + ctx.width / 1000000;
        out.Q = GapSet(lo, hi, {}, "constant-branch");
        for (auto& p : pts)
            if (lo <= p.first && p.first <= hi) out.points.push_back(p);
        return out;
    }
    for (size_t idx : ctx.leaves) out.points.push_back(pts[idx]);
    std::sort(out.points.begin(), out.points.end());
    out.Q = points_to_gapset(out.points, "filipczak");
    out.branch = "tree";
    return out;
}

// ---- quotient scan and the differentiable-restriction pipeline ----

ModulusReport quotient_uc_scan(const SampledFunction& f, const GapSet& Q,
                               const std::vector<double>& scales, int max_samples) {
    std::vector<std::pair<double, double>> pts;
    for (auto& [x, v] : f.samples)
        if (Q.contains(x)) pts.emplace_back(rat_to_double(x), rat_to_double(v.c));
    if (pts.size() < 2) throw std::invalid_argument("quotient_uc_scan: fewer than 2 samples");
    if (static_cast<int>(pts.size()) > max_samples) {
        std::vector<std::pair<double, double>> sub;
        for (int i = 0; i < max_samples; ++i)
            sub.push_back(pts[i * (pts.size() - 1) / (max_samples - 1)]);
        pts = std::move(sub);
    }

    struct QP {
        double x, y, q;
    };
    std::vector<QP> qs;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            qs.push_back({pts[i].first, pts[j].first,
                          (pts[j].second - pts[i].second) / (pts[j].first - pts[i].first)});

    ModulusReport rep;
    rep.pairs = static_cast<long>(qs.size());
    for (auto& p : qs) rep.max_abs_q = std::max(rep.max_abs_q, std::fabs(p.q));
    for (double delta : scales) {
        double w = 0;
        for (size_t i = 0; i < qs.size(); ++i) {
            for (size_t j = i + 1; j < qs.size(); ++j) {
                double dist = std::max(std::fabs(qs[i].x - qs[j].x), std::fabs(qs[i].y - qs[j].y));
                if (dist <= delta) w = std::max(w, std::fabs(qs[i].q - qs[j].q));
            }
        }
        rep.omega.emplace_back(delta, w);
    }
    return rep;
}

DiffRestriction differentiable_restriction(const SampledFunction& f, const Rational& a,
                                           const Rational& b, const DiffOptions& opt) {
    Breakpoints bp = clip_model(f, a, b);
    size_t m = bp.x.size() - 1;
    DiffRestriction out;

    // (1) longest monotone run at sample resolution
    size_t best_lo = 0, best_hi = 0;
    for (size_t i = 0; i < m;) {
        size_t j = i;
        int dir = 0;
        while (j < m) {
            int step = bp.v[j + 1] > bp.v[j] ? 1 : (bp.v[j + 1] < bp.v[j] ? -1 : 0);
            if (dir == 0) dir = step;
            if (step != 0 && dir != 0 && step != dir) break;
            ++j;
        }
        if (j - i > best_hi - best_lo) {
            best_lo = i;
            best_hi = j;
        }
        i = std::max(j, i + 1);
    }

    std::vector<std::pair<Rational, Rational>> carrier;
    if (best_hi - best_lo + 1 >= static_cast<size_t>(opt.min_run)) {
        // sun-lemma branch with L just above the largest local slope
        Rational maxslope(0);
        for (size_t i = best_lo; i < best_hi; ++i) {
            Rational s = rat_abs((bp.v[i + 1] - bp.v[i]) / (bp.x[i + 1] - bp.x[i]));
            maxslope = std::max(maxslope, s);
        }
        Rational L = maxslope * Rational(9, 8);
        if (L == 0) L = Rational(1);
        auto cert = lipschitz_restriction(f, bp.x[best_lo], bp.x[best_hi], L);
        out.branch = "monotone+lipschitz";
        for (size_t i = 0; i <= m; ++i)
            if (cert.P.contains(bp.x[i])) carrier.emplace_back(bp.x[i], bp.v[i]);
        out.Q = cert.P;
    } else {
        // level-set branch: the largest exact value class
        std::map<Rational, std::vector<size_t>> groups;
        for (size_t i = 0; i <= m; ++i) groups[bp.v[i]].push_back(i);
        const std::vector<size_t>* best = nullptr;
        for (auto& [v, idx] : groups)
            if (!best || idx.size() > best->size()) best = &idx;
        size_t need = std::min<size_t>(static_cast<size_t>(opt.level_m), (m + 1) / 4 + 2);
        if (!best || best->size() < std::max<size_t>(2, need))
            throw std::runtime_error(
                "differentiable_restriction: neither a monotone run nor a level set at this resolution");
        out.branch = "level-set";
        for (size_t i : *best) carrier.emplace_back(bp.x[i], bp.v[i]);
        out.Q = points_to_gapset(carrier, "level-set");
    }

    // (3) greedy modulus refinement
    int budget = opt.budget;
    double delta_min = rat_to_double((b - a)) / 16;
    std::vector<double> scan_scales = {delta_min};
    auto make_sf = [&](const std::vector<std::pair<Rational, Rational>>& pts) {
        return SampledFunction::from_values(
            {pts.begin(), pts.end()},
            GapSet(pts.front().first, pts.back().first));
    };
    out.refined = true;
    while (carrier.size() > 3) {
        auto sf = make_sf(carrier);
        GapSet qset = points_to_gapset(carrier, "scan");
        out.modulus = quotient_uc_scan(sf, qset, scan_scales);
        if (out.modulus.omega[0].second <= opt.tol) break;
        if (budget-- <= 0) {
            out.refined = false;
            break;
        }
        // drop the sample appearing in the worst pair-of-pairs
        double worst = -1;
        size_t drop = 0;
        for (size_t k = 0; k < carrier.size(); ++k) {
            std::vector<std::pair<Rational, Rational>> trial;
            for (size_t i = 0; i < carrier.size(); ++i)
                if (i != k) trial.push_back(carrier[i]);
            auto rep = quotient_uc_scan(make_sf(trial), points_to_gapset(trial, "scan"),
                                        scan_scales);
            double w = rep.omega[0].second;
            if (worst < 0 || w < worst) {
                worst = w;
                drop = k;
            }
        }
        carrier.erase(carrier.begin() + static_cast<long>(drop));
    }
    if (carrier.size() >= 2) {
        if (out.branch == "level-set" || carrier.size() < f.samples.size())
            out.Q = points_to_gapset(carrier, out.branch);
        auto sf = make_sf(carrier);
        out.modulus = quotient_uc_scan(sf, points_to_gapset(carrier, "scan"), scan_scales);
    }

    // derivative table: quotient against the nearest surviving neighbour
    for (size_t i = 0; i < carrier.size(); ++i) {
        size_t nb = (i == 0) ? 1 : i - 1;
        if (i + 1 < carrier.size() &&
            (i == 0 || carrier[i + 1].first - carrier[i].first < carrier[i].first - carrier[nb].first))
            nb = i + 1;
        double q = rat_to_double((carrier[nb].second - carrier[i].second) /
                                 (carrier[nb].first - carrier[i].first));
        out.derivative_table.emplace_back(carrier[i].first, q);
    }
    return out;
}

std::string lipschitz_certificate_to_json(const LipschitzCertificate& c) {
    nlohmann::json j;
    j["P"] = nlohmann::json::parse(gapset_to_json(c.P));
    j["L"] = rat_str(c.L);
    j["a_bar"] = rat_str(c.a_bar);
    j["gap_length_sum"] = rat_str(c.gap_length_sum);
    j["bound"] = rat_str(c.bound);
    j["hull_width"] = rat_str(c.hull_width);
    j["pairwise_checked"] = c.pairwise_checked;
    j["negated"] = c.negated;
    j["constant_branch"] = c.constant_branch;
    return j.dump();
}

}  // namespace monsterlab::restrict_ops
