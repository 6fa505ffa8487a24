#include "monsterlab/perfectsets.hpp"

#include <stdexcept>

namespace monsterlab::perfectsets {

BitPrefix prefix_from_index(std::uint32_t index, int len) {
    if (len < 0 || len > 31) throw std::invalid_argument("prefix_from_index: bad length");
    BitPrefix s(len);
    for (int i = 0; i < len; ++i) s[i] = (index >> i) & 1u;
    return s;
}

std::uint32_t prefix_to_index(const BitPrefix& s) {
    if (s.size() > 31) throw std::invalid_argument("prefix_to_index: too long");
    std::uint32_t v = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i]) v |= (1u << i);
    return v;
}

long long code_N(const BitPrefix& s) {
    long long n = static_cast<long long>(s.size());
    if (n == 0) return 1;
    if (n > 60) throw std::invalid_argument("code_N: prefix too long");
    long long acc = 0;
    for (long long i = 0; i < n - 1; ++i)
        if (s[i]) acc += (1LL << i);
    acc += static_cast<long long>(1 - s[n - 1]) << (n - 1);
    acc += 1LL << n;
    return acc;
}

std::vector<long long> code_N_all(const BitPrefix& s) {
    size_t len = s.size();
    std::vector<long long> out(len + 1);
    out[0] = 1;
    long long low_bits = 0;  // sum_{i<k-1} s_i 2^i, maintained incrementally
    for (size_t k = 1; k <= len; ++k) {
        if (k >= 2 && s[k - 2]) low_bits += 1LL << (k - 2);
        out[k] = low_bits + (static_cast<long long>(1 - s[k - 1]) << (k - 1)) + (1LL << k);
    }
    return out;
}

EmbeddedPoint embed_point(const BitPrefix& s) {
    auto ns = code_N_all(s);
    EmbeddedPoint out;
    for (size_t k = 0; k < s.size(); ++k) {
        if (!s[k]) continue;
        long long e = static_cast<long long>(k + 1) * ns[k];
        if (e > (1LL << 30)) throw std::invalid_argument("embed_point: exponent overflow");
        out.center.add_term(static_cast<int>(e), 2);
    }
    long long te = static_cast<long long>(s.size() + 1) * ns[s.size()];
    if (te > (1LL << 30)) throw std::invalid_argument("embed_point: exponent overflow");
    out.tail_exp = static_cast<int>(te);
    out.center.normalize();
    return out;
}

RatBall embed_h(const BitPrefix& s) {
    EmbeddedPoint p = embed_point(s);
    return RatBall(p.center.to_rational(), rat_pow(Rational(3), -p.tail_exp));
}

BitPrefix adding_machine(const BitPrefix& s) {
    BitPrefix out = s;
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i] == 0) {
            out[i] = 1;
            return out;
        }
        out[i] = 0;
    }
    return out;  // all ones wrapped to all zeros
}

std::pair<RatBall, RatBall> frak_f(int prefix_depth, std::uint32_t x_index) {
    if (prefix_depth < 0 || prefix_depth > 20)
        throw std::invalid_argument("frak_f: depth out of range");
    if (prefix_depth < 31 && x_index >= (1u << prefix_depth))
        throw std::invalid_argument("frak_f: index out of range");
    BitPrefix s = prefix_from_index(x_index, prefix_depth);
    return {embed_h(s), embed_h(adding_machine(s))};
}

PropertyAReport verify_property_a(const BitPrefix& s) {
    PropertyAReport rep;
    size_t len = s.size();
    BitPrefix sig = adding_machine(s);
    auto n_s = code_N_all(s);
    auto n_sig = code_N_all(sig);
    for (size_t n = 1; n <= len; ++n) {
        if (n_sig[n] != n_s[n] + 1) rep.mismatches.push_back(static_cast<int>(n));
    }
    // the predicted exception: first zero bit at position z, all ones before
    std::optional<int> predicted;
    for (size_t z = 0; z < len; ++z) {
        if (s[z] == 0) {
            predicted = static_cast<int>(z + 1);
            break;
        }
        // bit is 1; keep scanning, prefix of ones continues
    }
    rep.exceptional_n = predicted;
    if (predicted.has_value())
        rep.ok = rep.mismatches.size() == 1 && rep.mismatches[0] == *predicted;
    else
        rep.ok = rep.mismatches.empty();
    return rep;
}

PropertyBReport verify_property_b(const BitPrefix& s, const BitPrefix& t) {
    if (s.size() != t.size()) throw std::invalid_argument("verify_property_b: lengths differ");
    PropertyBReport rep;
    size_t n = 0;
    while (n < s.size() && s[n] == t[n]) ++n;
    if (n == s.size()) throw std::invalid_argument("verify_property_b: identical prefixes");
    rep.n = static_cast<int>(n);

    EmbeddedPoint ps = embed_point(s);
    EmbeddedPoint pt = embed_point(t);
    auto ns = code_N_all(s);
    long long be = static_cast<long long>(n + 1) * ns[n];
    Pow3Sum bound = Pow3Sum::unit(static_cast<int>(be), 1);       // 3^{-(n+1)N(s|n)}
    Pow3Sum bound3 = Pow3Sum::unit(static_cast<int>(be) - 1, 1);  // 3 * same

    // |h(s) - h(t)| enclosed by |H_t - H_s| -/+ (r_s + r_t)
    const EmbeddedPoint& a = (s[n] == 0) ? ps : pt;  // smaller value
    const EmbeddedPoint& b = (s[n] == 0) ? pt : ps;
    Pow3Sum diff = b.center - a.center;
    Pow3Sum radii = Pow3Sum::unit(a.tail_exp, 1) + Pow3Sum::unit(b.tail_exp, 1);
    rep.lower_ok = pow3_compare(diff - radii, bound) >= 0;
    rep.upper_ok = pow3_compare(diff + radii, bound3) <= 0;
    return rep;
}

}  // namespace monsterlab::perfectsets
