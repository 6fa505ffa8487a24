#include "monsterlab/gapset.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace monsterlab {

GapSet::GapSet(Rational l, Rational h, std::vector<std::pair<Rational, Rational>> g,
               std::string gen)
    : lo(std::move(l)), hi(std::move(h)), gaps(std::move(g)), generator(std::move(gen)) {
    if (!(lo < hi)) throw std::invalid_argument("gapset: empty hull");
    std::sort(gaps.begin(), gaps.end());
    Rational prev = lo;
    for (auto& [a, b] : gaps) {
        if (!(a < b)) throw std::invalid_argument("gapset: degenerate gap");
        // the open interval (a,b) must sit inside (lo, hi); endpoints of the
        // hull may coincide with gap endpoints (isolated carrier points)
        if (a < lo || hi < b) throw std::invalid_argument("gapset: gap not inside hull");
        if (a < prev) throw std::invalid_argument("gapset: overlapping gaps");
        prev = b;
    }
}

bool GapSet::contains(const Rational& x) const {
    if (x < lo || hi < x) return false;
    return gap_containing(x) == nullptr;
}

const std::pair<Rational, Rational>* GapSet::gap_containing(const Rational& x) const {
    auto it = std::upper_bound(gaps.begin(), gaps.end(), x,
                               [](const Rational& v, const auto& g) { return v < g.first; });
    if (it == gaps.begin()) return nullptr;
    --it;
    return (it->first < x && x < it->second) ? &*it : nullptr;
}

Rational GapSet::gap_length_sum() const {
    Rational s(0);
    for (auto& [a, b] : gaps) s += b - a;
    return s;
}

std::vector<Rational> GapSet::endpoints() const {
    std::vector<Rational> out;
    out.push_back(lo);
    for (auto& [a, b] : gaps) {
        out.push_back(a);
        out.push_back(b);
    }
    out.push_back(hi);
    return out;
}

std::vector<std::pair<Rational, Rational>> GapSet::components() const {
    std::vector<std::pair<Rational, Rational>> out;
    Rational left = lo;
    for (auto& [a, b] : gaps) {
        out.emplace_back(left, a);
        left = b;
    }
    out.emplace_back(left, hi);
    return out;
}

GapSet cantor_ternary(int depth) {
    if (depth < 0) throw std::invalid_argument("cantor_ternary: negative depth");
    std::vector<std::pair<Rational, Rational>> gaps;
    std::vector<std::pair<Rational, Rational>> cells = {{Rational(0), Rational(1)}};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<Rational, Rational>> next;
        for (auto& [a, b] : cells) {
            Rational w = (b - a) / 3;
            gaps.emplace_back(a + w, b - w);
            next.emplace_back(a, a + w);
            next.emplace_back(b - w, b);
        }
        cells = std::move(next);
    }
    return GapSet(Rational(0), Rational(1), std::move(gaps), "cantor");
}

GapSet hat(const GapSet& q) {
    std::vector<std::pair<Rational, Rational>> gaps;
    gaps.reserve(q.gaps.size() * 2);
    for (auto& [a, b] : q.gaps) {
        Rational w = (b - a) / 3;
        gaps.emplace_back(a, a + w);
        gaps.emplace_back(b - w, b);
    }
    return GapSet(q.lo, q.hi, std::move(gaps), q.generator);
}

GapSet deepen(const GapSet& q, int depth) {
    if (q.generator == "cantor") return cantor_ternary(depth);
    return q;
}

std::string gapset_to_json(const GapSet& q) {
    nlohmann::json j;
    j["hull"] = {rat_str(q.lo), rat_str(q.hi)};
    auto arr = nlohmann::json::array();
    for (auto& [a, b] : q.gaps) arr.push_back({rat_str(a), rat_str(b)});
    j["gaps"] = arr;
    j["generator"] = q.generator;
    return j.dump();
}

GapSet gapset_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (!j.contains("hull") || !j["hull"].is_array() || j["hull"].size() != 2)
        throw std::invalid_argument("gapset json: missing hull [lo, hi]");
    Rational lo = rat_parse(j["hull"][0].get<std::string>());
    Rational hi = rat_parse(j["hull"][1].get<std::string>());
    std::vector<std::pair<Rational, Rational>> gaps;
    for (auto& g : j.value("gaps", nlohmann::json::array())) {
        if (!g.is_array() || g.size() != 2)
            throw std::invalid_argument("gapset json: gap must be [a, b]");
        gaps.emplace_back(rat_parse(g[0].get<std::string>()), rat_parse(g[1].get<std::string>()));
    }
    return GapSet(lo, hi, std::move(gaps), j.value("generator", std::string("explicit")));
}

}  // namespace monsterlab
