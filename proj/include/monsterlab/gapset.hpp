#pragma once

#include <string>
#include <vector>

#include "monsterlab/rational.hpp"

namespace monsterlab {

// A closed subset of a compact interval: the hull minus finitely many open
// gaps, all endpoints exact rationals. `generator` tags how the set deepens
// ("cantor", "ex111", "explicit", ...).
struct GapSet {
    Rational lo;
    Rational hi;
    std::vector<std::pair<Rational, Rational>> gaps;  // disjoint, sorted, inside (lo, hi)
    std::string generator = "explicit";

    GapSet() : lo(0), hi(1) {}
    GapSet(Rational l, Rational h, std::vector<std::pair<Rational, Rational>> g = {},
           std::string gen = "explicit");

    bool contains(const Rational& x) const;
    // The gap (a,b) with a < x < b, if any.
    const std::pair<Rational, Rational>* gap_containing(const Rational& x) const;

    Rational gap_length_sum() const;

    // All carrier interval endpoints: hull ends plus every gap endpoint.
    std::vector<Rational> endpoints() const;

    // The closed intervals making up the set (between consecutive gaps).
    std::vector<std::pair<Rational, Rational>> components() const;
};

// Standard middle-thirds construction on [0,1] to the given depth.
GapSet cantor_ternary(int depth);

// Q with the closed middle third of every bounded gap rejoined: each gap
// (a,b) becomes the two gaps (a, a + (b-a)/3) and (b - (b-a)/3, b). The
// represented set only grows.
GapSet hat(const GapSet& q);

// Regenerates a tagged set at a different depth; "explicit" sets are
// returned unchanged.
GapSet deepen(const GapSet& q, int depth);

std::string gapset_to_json(const GapSet& q);
GapSet gapset_from_json(const std::string& text);

}  // namespace monsterlab
