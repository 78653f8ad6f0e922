#pragma once
#include <cstdint>
#include "stein/ff.hpp"

namespace stein {

// splitmix64; deterministic across platforms, good enough for test data
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
    // uniform in [lo, hi], inclusive
    int64_t range(int64_t lo, int64_t hi) { return lo + int64_t(below(uint64_t(hi - lo + 1))); }

  private:
    uint64_t state_;
};

// Product of `steps` random symplectic transvections over F_p.
FfMatrix random_symplectic_ff(const SymplecticSpace& sp, Rng& rng, size_t steps);

FfMatrix random_ff_matrix(PrimeField f, size_t rows, size_t cols, Rng& rng);

} // namespace stein
