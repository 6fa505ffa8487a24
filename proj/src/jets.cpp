#include "monsterlab/jets.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace monsterlab {

void SetFunction::validate() const {
    if (jets.empty()) throw std::invalid_argument("setfunction: no jets");
    for (size_t i = 0; i < jets.size(); ++i) {
        if (jets[i].order() != order)
            throw std::invalid_argument("setfunction: jet order not uniform");
        if (i > 0 && !(jets[i - 1].x < jets[i].x))
            throw std::invalid_argument("setfunction: jets must be sorted by x");
        if (!carrier.contains(jets[i].x))
            throw std::invalid_argument("setfunction: jet point outside carrier");
    }
    for (const Rational& e : carrier.endpoints()) {
        if (!jet_at(e))
            throw std::invalid_argument("setfunction: missing jet at carrier endpoint " + rat_str(e));
    }
}

const Jet* SetFunction::jet_at(const Rational& x) const {
    auto it = std::lower_bound(jets.begin(), jets.end(), x,
                               [](const Jet& j, const Rational& v) { return j.x < v; });
    if (it != jets.end() && it->x == x) return &*it;
    return nullptr;
}

Rational SetFunction::deriv_at(const Rational& x, int k) const {
    const Jet* j = jet_at(x);
    if (!j) throw std::invalid_argument("setfunction: no jet at " + rat_str(x));
    if (k > j->order()) throw std::invalid_argument("setfunction: derivative order too high");
    return j->derivs[k];
}

SetFunction SetFunction::derivative_shift(int i) const {
    if (i < 0 || i > order) throw std::invalid_argument("derivative_shift: bad order");
    SetFunction out;
    out.carrier = carrier;
    out.order = order - i;
    out.jets.reserve(jets.size());
    for (const Jet& j : jets) {
        Jet nj;
        nj.x = j.x;
        nj.derivs.assign(j.derivs.begin() + i, j.derivs.end());
        out.jets.push_back(std::move(nj));
    }
    return out;
}

Rational taylor_poly(const Jet& jet, const Rational& x) {
    Rational dx = x - jet.x;
    Rational acc(0);
    Rational pow(1);
    Rational fact(1);
    for (size_t i = 0; i < jet.derivs.size(); ++i) {
        if (i > 0) {
            pow *= dx;
            fact *= static_cast<long>(i);
        }
        acc += jet.derivs[i] / fact * pow;
    }
    return acc;
}

Rational q_fn(const SetFunction& f, const Rational& a, const Rational& b) {
    if (a == b) return Rational(0);
    const Jet* ja = f.jet_at(a);
    const Jet* jb = f.jet_at(b);
    if (!ja || !jb) throw std::invalid_argument("q_fn: missing jets");
    Rational num = jb->derivs[0] - taylor_poly(*ja, b);
    return num / rat_pow(b - a, f.order);
}

std::string setfunction_to_json(const SetFunction& f) {
    nlohmann::json j;
    j["carrier"] = nlohmann::json::parse(gapset_to_json(f.carrier));
    j["order"] = f.order;
    auto arr = nlohmann::json::array();
    for (const Jet& jet : f.jets) {
        nlohmann::json je;
        je["x"] = rat_str(jet.x);
        auto ds = nlohmann::json::array();
        for (auto& d : jet.derivs) ds.push_back(rat_str(d));
        je["derivs"] = ds;
        arr.push_back(je);
    }
    j["jets"] = arr;
    return j.dump();
}

SetFunction setfunction_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SetFunction f;
    if (!j.contains("carrier") || !j.contains("jets"))
        throw std::invalid_argument("setfunction json: missing carrier or jets");
    f.carrier = gapset_from_json(j["carrier"].dump());
    f.order = j.value("order", 1);
    for (auto& je : j["jets"]) {
        Jet jet;
        jet.x = rat_parse(je.at("x").get<std::string>());
        for (auto& d : je.at("derivs")) jet.derivs.push_back(rat_parse(d.get<std::string>()));
        f.jets.push_back(std::move(jet));
    }
    std::sort(f.jets.begin(), f.jets.end(), [](const Jet& a, const Jet& b) { return a.x < b.x; });
    f.validate();
    return f;
}

}  // namespace monsterlab
