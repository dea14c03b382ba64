#ifndef PERFTOWER_TESTS_RANDOM_PAIRS_HPP
#define PERFTOWER_TESTS_RANDOM_PAIRS_HPP

#include <perftower/pairs.hpp>

namespace perftower::testsupport {

// Deterministic stream of small principal pairs over F2, F3, Z/4 and Z:
// one or two variables, at most two relations of degree <= 3, generators of
// degree <= 2 (constants included). Seed-pinned.
class RandomPairStream {
public:
    explicit RandomPairStream(std::uint64_t seed) : rng_(seed) {}
    PrincipalPair next();

private:
    Rng rng_;
    std::uint64_t count_ = 0;
};

} // namespace perftower::testsupport

#endif
