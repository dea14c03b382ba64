#ifndef PERFTOWER_RNG_HPP
#define PERFTOWER_RNG_HPP

#include <cstdint>

namespace perftower {

// splitmix64. Seed-pinned sampling must be bit-identical across platforms,
// so we do not use <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0. Modulo bias is irrelevant at the sample
    // sizes used here, and determinism matters more.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace perftower

#endif
