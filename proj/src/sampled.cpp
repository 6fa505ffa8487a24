#include "monsterlab/sampled.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace monsterlab {

void SampledFunction::validate() const {
    if (samples.empty()) throw std::invalid_argument("sampled: no samples");
    for (size_t i = 0; i < samples.size(); ++i) {
        const Rational& x = samples[i].first;
        if (i > 0 && !(samples[i - 1].first < x))
            throw std::invalid_argument("sampled: sample x's must be strictly increasing");
        if (x < domain.lo || domain.hi < x)
            throw std::invalid_argument("sampled: sample outside domain hull");
    }
}

Rational SampledFunction::value_at(const Rational& x) const {
    if (samples.empty()) throw std::invalid_argument("sampled: no samples");
    if (x < samples.front().first || samples.back().first < x)
        throw std::invalid_argument("sampled: x outside sample hull");
    auto it = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const auto& s, const Rational& v) { return s.first < v; });
    if (it != samples.end() && it->first == x) return it->second.c;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    Rational w = (x - lo.first) / (hi.first - lo.first);
    return lo.second.c + w * (hi.second.c - lo.second.c);
}

SampledFunction SampledFunction::from_values(std::vector<std::pair<Rational, Rational>> pts,
                                             GapSet domain) {
    SampledFunction f;
    f.domain = std::move(domain);
    f.samples.reserve(pts.size());
    for (auto& [x, v] : pts) f.samples.emplace_back(x, RatBall(v));
    f.validate();
    return f;
}

std::string sampled_to_json(const SampledFunction& f) {
    nlohmann::json j;
    j["domain"] = nlohmann::json::parse(gapset_to_json(f.domain));
    auto arr = nlohmann::json::array();
    for (auto& [x, v] : f.samples) {
        nlohmann::json s = {rat_str(x), rat_str(v.c)};
        if (v.r != 0) s.push_back(rat_str(v.r));
        arr.push_back(s);
    }
    j["samples"] = arr;
    j["interp"] = f.interp;
    return j.dump();
}

SampledFunction sampled_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SampledFunction f;
    if (!j.contains("domain")) throw std::invalid_argument("sampled json: missing domain");
    f.domain = gapset_from_json(j["domain"].dump());
    if (!j.contains("samples") || !j["samples"].is_array())
        throw std::invalid_argument("sampled json: missing samples");
    for (auto& s : j["samples"]) {
        if (!s.is_array() || s.size() < 2)
            throw std::invalid_argument("sampled json: sample must be [x, value(, radius)]");
        Rational x = rat_parse(s[0].get<std::string>());
        Rational v = rat_parse(s[1].get<std::string>());
        Rational r = s.size() > 2 ? rat_parse(s[2].get<std::string>()) : Rational(0);
        f.samples.emplace_back(x, RatBall(v, r));
    }
    f.interp = j.value("interp", std::string("linear"));
    f.validate();
    return f;
}

}  // namespace monsterlab
