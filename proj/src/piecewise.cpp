#include "monsterlab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace monsterlab {

namespace {

Rational poly_eval(const std::vector<Rational>& coeffs, const Rational& t) {
    Rational acc(0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
}

}  // namespace

double smooth_step(double u) {
    double v = 3 * u - 1;  // [1/3, 2/3] -> [0, 1]
    if (v <= 0) return 0;
    if (v >= 1) return 1;
    double e0 = std::exp(-1 / v);
    double e1 = std::exp(-1 / (1 - v));
    return e0 / (e0 + e1);
}

Ball smooth_step_ball(const Ball& u) {
    double c = smooth_step(u.c);
    // |d/du smooth_step| <= 6 everywhere (the bump quotient slope is < 2 on
    // the unit interval, times the affine factor 3).
    double raw = std::min(1.0, 6.0 * u.r);
    Ball out(c, detail::widen(c, raw + 4 * detail::ulp(1.0 + c), 2));
    if (out.c - out.r < 0) out = Ball(out.c, out.r);  // step stays in [0,1]; radius already covers
    return out;
}

RatBall PiecewiseEval::eval_exact(const Rational& x) const {
    if (pieces.empty()) throw std::logic_error("piecewise: empty");
    if (x < hull_lo() || hull_hi() < x)
        throw std::invalid_argument("piecewise: x outside hull");
    auto it = std::upper_bound(pieces.begin(), pieces.end(), x,
                               [](const Rational& v, const Piece& p) { return v < p.lo; });
    const Piece& p = (it == pieces.begin()) ? *it : *(it - 1);
    switch (p.kind) {
        case Piece::Kind::Poly:
            return RatBall(poly_eval(p.coeffs, x - p.lo));
        case Piece::Kind::Blend: {
            // the step is flat on the outer thirds, so the blend equals the
            // endpoint Taylor polynomial there, exactly
            Rational w = (p.hi - p.lo) / 3;
            if (x <= p.lo + w) return RatBall(taylor_poly(p.blend_a, x));
            if (x >= p.hi - w) return RatBall(taylor_poly(p.blend_b, x));
            throw std::invalid_argument(
                "piecewise: blend has no exact rational form on the middle third");
        }
        case Piece::Kind::Carrier: {
            auto cit = std::lower_bound(
                carrier_values.begin(), carrier_values.end(), x,
                [](const auto& s, const Rational& v) { return s.first < v; });
            if (cit != carrier_values.end() && cit->first == x) return RatBall(cit->second);
            if (cit == carrier_values.begin() || cit == carrier_values.end())
                throw std::invalid_argument("piecewise: x outside carrier data");
            const auto& hi = *cit;
            const auto& lo = *(cit - 1);
            Rational w = (x - lo.first) / (hi.first - lo.first);
            Rational center = lo.second + w * (hi.second - lo.second);
            return RatBall(center, rat_abs(hi.second - lo.second));
        }
    }
    throw std::logic_error("piecewise: unknown piece kind");
}

Ball PiecewiseEval::eval(double x) const {
    Rational xr = rat_from_double(x);
    if (xr < hull_lo() || hull_hi() < xr)
        throw std::invalid_argument("piecewise: x outside hull");
    auto it = std::upper_bound(pieces.begin(), pieces.end(), xr,
                               [](const Rational& v, const Piece& p) { return v < p.lo; });
    const Piece& p = (it == pieces.begin()) ? *it : *(it - 1);
    if (p.kind == Piece::Kind::Blend) {
        double a = rat_to_double(p.lo), b = rat_to_double(p.hi);
        Ball u = (Ball::exact(x) - Ball(a, detail::ulp(a))) /
                 (Ball(b, detail::ulp(b)) - Ball(a, detail::ulp(a)));
        Ball beta = smooth_step_ball(u);
        Ball alpha = Ball::exact(1.0) - beta;
        double ta = rat_to_double(taylor_poly(p.blend_a, xr));
        double tb = rat_to_double(taylor_poly(p.blend_b, xr));
        return alpha * Ball(ta, 2 * detail::ulp(ta)) + beta * Ball(tb, 2 * detail::ulp(tb));
    }
    RatBall v = eval_exact(xr);
    double c = rat_to_double(v.c);
    double r = rat_to_double(v.r);
    return Ball(c, detail::widen(c, r, 2));
}

std::string piecewise_to_json(const PiecewiseEval& pe) {
    nlohmann::json j;
    auto arr = nlohmann::json::array();
    for (const auto& p : pe.pieces) {
        nlohmann::json pj;
        pj["interval"] = {rat_str(p.lo), rat_str(p.hi)};
        if (p.kind == PiecewiseEval::Piece::Kind::Poly) {
            pj["kind"] = "poly";
            auto cs = nlohmann::json::array();
            for (auto& c : p.coeffs) cs.push_back(rat_str(c));
            pj["coeffs"] = cs;
        } else if (p.kind == PiecewiseEval::Piece::Kind::Carrier) {
            pj["kind"] = "carrier";
        } else {
            pj["kind"] = "blend";
            auto dump_jet = [](const Jet& jet) {
                nlohmann::json je;
                je["x"] = rat_str(jet.x);
                auto ds = nlohmann::json::array();
                for (auto& d : jet.derivs) ds.push_back(rat_str(d));
                je["derivs"] = ds;
                return je;
            };
            pj["jet_a"] = dump_jet(p.blend_a);
            pj["jet_b"] = dump_jet(p.blend_b);
        }
        arr.push_back(pj);
    }
    j["pieces"] = arr;
    auto cv = nlohmann::json::array();
    for (auto& [x, v] : pe.carrier_values) cv.push_back({rat_str(x), rat_str(v)});
    j["carrier_values"] = cv;
    return j.dump();
}

PiecewiseEval piecewise_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PiecewiseEval pe;
    for (auto& pj : j.at("pieces")) {
        PiecewiseEval::Piece p;
        p.lo = rat_parse(pj.at("interval")[0].get<std::string>());
        p.hi = rat_parse(pj.at("interval")[1].get<std::string>());
        std::string kind = pj.at("kind").get<std::string>();
        if (kind == "poly") {
            p.kind = PiecewiseEval::Piece::Kind::Poly;
            for (auto& c : pj.at("coeffs")) p.coeffs.push_back(rat_parse(c.get<std::string>()));
        } else if (kind == "carrier") {
            p.kind = PiecewiseEval::Piece::Kind::Carrier;
        } else if (kind == "blend") {
            p.kind = PiecewiseEval::Piece::Kind::Blend;
            auto load_jet = [](const nlohmann::json& je) {
                Jet jet;
                jet.x = rat_parse(je.at("x").get<std::string>());
                for (auto& d : je.at("derivs")) jet.derivs.push_back(rat_parse(d.get<std::string>()));
                return jet;
            };
            p.blend_a = load_jet(pj.at("jet_a"));
            p.blend_b = load_jet(pj.at("jet_b"));
        } else {
            throw std::invalid_argument("piecewise json: unknown kind " + kind);
        }
        pe.pieces.push_back(std::move(p));
    }
    for (auto& cv : j.value("carrier_values", nlohmann::json::array()))
        pe.carrier_values.emplace_back(rat_parse(cv[0].get<std::string>()),
                                       rat_parse(cv[1].get<std::string>()));
    std::sort(pe.pieces.begin(), pe.pieces.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
    return pe;
}

}  // namespace monsterlab
