// Deterministic seeded RNG (splitmix64). std::random distributions are not
// byte-portable across standard libraries, so sampling goes through this.
#pragma once

#include <cstdint>

namespace tconj {

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n > 0
    uint64_t below(uint64_t n) { return next() % n; }

    // uniform in [lo, hi] inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1ULL) != 0; }

private:
    uint64_t state_;
};

} // namespace tconj
