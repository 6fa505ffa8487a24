#pragma once

#include <cstdlib>
#include <string>

namespace monsterlab {

// Working precision in bits. Default 53 (binary64). The env var
// MONSTERLAB_PRECISION overrides it; series truncation depths are derived
// from this so that tails stay below 2^-precision_bits().
inline int precision_bits() {
    static const int bits = [] {
        if (const char* s = std::getenv("MONSTERLAB_PRECISION")) {
            int v = std::atoi(s);
            if (v >= 16 && v <= 256) return v;
        }
        return 53;
    }();
    return bits;
}

}  // namespace monsterlab
