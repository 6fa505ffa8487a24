#pragma once

#include <cstdint>
#include <vector>

#include "monsterlab/rational.hpp"

namespace monsterlab {

// Exact arithmetic on finite sums of signed powers of 3: sum_j d_j 3^{-e_j}.
// The ternary-lattice embedding produces values whose exponents reach ~10^5,
// far beyond what is comfortable as reduced fractions in bulk; keeping the
// sparse digit form makes comparisons O(#terms).
struct Pow3Sum {
    // (exponent, digit), sorted by exponent ascending. Normalized form has
    // distinct exponents and digits in [-2, 2].
    std::vector<std::pair<int, std::int64_t>> terms;

    static Pow3Sum unit(int exp, std::int64_t digit) {
        Pow3Sum s;
        if (digit != 0) s.terms.emplace_back(exp, digit);
        return s;
    }

    void add_term(int exp, std::int64_t digit) {
        if (digit != 0) terms.emplace_back(exp, digit);
    }

    void normalize();

    // Sign of the represented value; requires normalized form. With all
    // digits in [-2,2], the leading (smallest-exponent) digit decides: the
    // finite tail is strictly below one unit of its weight.
    int sign() const {
        for (auto& [e, d] : terms)
            if (d != 0) return d > 0 ? 1 : -1;
        return 0;
    }

    Rational to_rational() const;
};

Pow3Sum operator+(const Pow3Sum& a, const Pow3Sum& b);
Pow3Sum operator-(const Pow3Sum& a, const Pow3Sum& b);

// sign of a - b
int pow3_compare(const Pow3Sum& a, const Pow3Sum& b);

}  // namespace monsterlab
