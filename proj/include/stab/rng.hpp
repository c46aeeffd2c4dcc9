#pragma once

#include <cstdint>

namespace stab {

// splitmix64: tiny, deterministic across platforms, good enough for seeded
// test-instance generation and randomized searches.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) via 128-bit multiply; n > 0
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool flip() { return next() & 1ull; }

    // deterministic derived stream, independent of call order elsewhere
    Rng fork(uint64_t stream) const {
        Rng r(state_ ^ (0x632be59bd9b4e019ull * (stream + 1)));
        r.next();
        return r;
    }

private:
    uint64_t state_;
};

} // namespace stab
