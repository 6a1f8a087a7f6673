#pragma once
// Deterministic random sampling.  All experiments draw from mt19937_64 with
// an explicit seed and convert to doubles via the fixed 53-bit construction,
// so CSV outputs are byte-identical across platforms and runs.

#include <cstdint>
#include <random>
#include <stdexcept>

#include "zygfrac/geometry.hpp"

namespace zygfrac {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0,1) with exactly reproducible rounding.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive (rejection sampling, unbiased).
    long long uniform_int(long long lo, long long hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
        if (span == 0) return static_cast<long long>(eng_());  // full 64-bit range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return lo + static_cast<long long>(r % span);
    }

    int sign() { return (eng_() & 1u) ? 1 : -1; }

    Vec3 uniform_in(const Box3& box) {
        return {uniform(box.lo[0], box.hi[0]), uniform(box.lo[1], box.hi[1]),
                uniform(box.lo[2], box.hi[2])};
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace zygfrac
