#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace xsltevo {

// Deterministic random source. Wraps the (standardized) mt19937_64 raw
// stream with our own integer/real mappings so that results do not depend
// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
    // mapping exact and platform-independent.
    int uniform_int(int lo, int hi) {
        assert(lo <= hi);
        uint64_t range = uint64_t(int64_t(hi) - int64_t(lo)) + 1;
        uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return int(int64_t(lo) + int64_t(v % range));
    }

    size_t uniform_index(size_t n) {
        assert(n > 0);
        return size_t(uniform_int(0, int(n - 1)));
    }

    // Uniform double in [0, 1).
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return uniform01() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        assert(!items.empty());
        return items[uniform_index(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace xsltevo
