#pragma once

#include <initializer_list>
#include <string>

#include "zetakit/family.hpp"
#include "zetakit/ratfun.hpp"

namespace zetakit::test {

inline PolyZ pz(std::initializer_list<long> cs) {
    PolyZ f;
    for (long c : cs) f.push_back(ZZ(c));
    return f;
}

inline std::vector<long> longs(const std::vector<ZZ>& zs) {
    std::vector<long> out;
    for (const auto& z : zs) out.push_back(z.get_si());
    return out;
}

// simple deterministic PRNG for property tests
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) { return lo + (long)(next() % (uint64_t)(hi - lo + 1)); }
};

inline std::string data_path(const std::string& name) { return std::string(ZETAKIT_DATA_DIR) + "/" + name; }

}  // namespace zetakit::test
