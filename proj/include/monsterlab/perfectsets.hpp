#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "monsterlab/pow3.hpp"
#include "monsterlab/rational.hpp"

namespace monsterlab::perfectsets {

// A finite 0/1 word: the address of a cylinder in 2^omega.
using BitPrefix = std::vector<std::uint8_t>;

BitPrefix prefix_from_index(std::uint32_t index, int len);  // bit i = (index >> i) & 1
std::uint32_t prefix_to_index(const BitPrefix& s);

// N on the first n bits: sum_{i<n-1} s_i 2^i + (1 - s_{n-1}) 2^{n-1} + 2^n.
// The empty prefix maps to 1, the only value consistent with
// 2^n <= N < 2^{n+1} at n = 0.
long long code_N(const BitPrefix& s);

// All N(s|k) for k = 0..len(s).
std::vector<long long> code_N_all(const BitPrefix& s);

// Partial sum H(s) = sum_{k<len} 2 s_k 3^{-(k+1) N(s|k)} as a sparse ternary
// sum, plus the tail exponent (len+1) N(s) bounding every extension.
struct EmbeddedPoint {
    Pow3Sum center;
    int tail_exp = 0;  // extensions add at most 3 * 3^{-tail_exp}
};
EmbeddedPoint embed_point(const BitPrefix& s);

// The point value for the zero extension of the prefix, with tail radius
// 3^{-(len+1) N(s)} as the deepening uncertainty.
RatBall embed_h(const BitPrefix& s);

// Add-one-and-carry on the finite truncation; all-ones wraps to all-zeros.
BitPrefix adding_machine(const BitPrefix& s);

// The self-map h o sigma o h^{-1} on the depth-k cylinder grid: input and
// output embeddings of the indexed prefix and its successor.
std::pair<RatBall, RatBall> frak_f(int prefix_depth, std::uint32_t x_index);

struct PropertyAReport {
    bool ok = false;
    std::optional<int> exceptional_n;   // predicted from the bit pattern
    std::vector<int> mismatches;        // n with N(sigma(s)|n) != N(s|n) + 1
};

// Checks N(sigma(s)|n) = N(s|n) + 1 for 1 <= n <= len, except at the unique
// n (if any) with s_0 = ... = s_{n-2} = 1 and s_{n-1} = 0.
PropertyAReport verify_property_a(const BitPrefix& s);

struct PropertyBReport {
    int n = -1;          // first disagreement index
    bool lower_ok = false;  // 3^{-(n+1)N(s|n)} <= |h(s) - h(t)| - radii
    bool upper_ok = false;  // |h(s) - h(t)| + radii <= 3 * 3^{-(n+1)N(s|n)}
    bool ok() const { return lower_ok && upper_ok; }
};

// Certifies both embedding inequalities at the first disagreement index,
// tail radii included. Equal prefixes are rejected.
PropertyBReport verify_property_b(const BitPrefix& s, const BitPrefix& t);

}  // namespace monsterlab::perfectsets
