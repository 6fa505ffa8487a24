#include "monsterlab/pow3.hpp"

#include <algorithm>
#include <map>

namespace monsterlab {

void Pow3Sum::normalize() {
    if (terms.empty()) return;
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge equal exponents, then carry from the least significant end:
    // 3 units at exponent e are one unit at e-1.
    std::map<int, std::int64_t> acc;
    for (auto& [e, d] : terms) acc[e] += d;
    std::vector<std::pair<int, std::int64_t>> out;
    std::int64_t carry = 0;
    int carry_exp = 0;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        int e = it->first;
        std::int64_t d = it->second;
        while (carry != 0 && carry_exp > e) {
            std::int64_t r = carry % 3;
            carry /= 3;
            if (r != 0) out.emplace_back(carry_exp, r);
            --carry_exp;
        }
        if (carry != 0 && carry_exp == e) {
            d += carry;
            carry = 0;
        }
        // keep digit in [-2, 2]
        std::int64_t q = d / 3;
        std::int64_t r = d % 3;
        if (r != 0) out.emplace_back(e, r);
        carry = q;
        carry_exp = e - 1;
    }
    while (carry != 0) {
        std::int64_t r = carry % 3;
        std::int64_t c = carry / 3;
        if (r != 0) out.emplace_back(carry_exp, r);
        carry = c;
        --carry_exp;
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    terms = std::move(out);
}

Rational Pow3Sum::to_rational() const {
    Rational acc(0);
    for (auto& [e, d] : terms) acc += Rational(d) * rat_pow(Rational(3), -e);
    return acc;
}

Pow3Sum operator+(const Pow3Sum& a, const Pow3Sum& b) {
    Pow3Sum out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    out.terms = a.terms;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    out.normalize();
    return out;
}

Pow3Sum operator-(const Pow3Sum& a, const Pow3Sum& b) {
    Pow3Sum out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    out.terms = a.terms;
    for (auto& [e, d] : b.terms) out.terms.emplace_back(e, -d);
    out.normalize();
    return out;
}

int pow3_compare(const Pow3Sum& a, const Pow3Sum& b) { return (a - b).sign(); }

}  // namespace monsterlab
