#include "random_pairs.hpp"

namespace perftower::testsupport {

PrincipalPair RandomPairStream::next() {
    CoefficientRing ring = CoefficientRing::integers();
    switch (count_++ % 4) {
    case 0: ring = CoefficientRing::prime_field(2); break;
    case 1: ring = CoefficientRing::prime_field(3); break;
    case 2: ring = CoefficientRing::integers_mod(4); break;
    default: break;
    }
    std::size_t nvars = 1 + rng_.below(2);
    std::vector<std::string> vars = {"x"};
    if (nvars == 2)
        vars.push_back("y");
    AmbientPtr amb = Ambient::make(ring, vars);

    std::vector<Polynomial> rels;
    std::size_t nrels = rng_.below(3);
    for (std::size_t k = 0; k < nrels; ++k) {
        Polynomial r = random_element(amb, rng_, 3, 2, 2);
        if (!r.is_zero())
            rels.push_back(std::move(r));
    }
    Polynomial f(amb);
    for (int attempt = 0; attempt < 8 && f.is_zero(); ++attempt)
        f = random_element(amb, rng_, 2, 2, 2);
    if (f.is_zero())
        f = Polynomial::constant(amb, 2);
    return PrincipalPair(PresentedAlgebra(amb, rels), f);
}

} // namespace perftower::testsupport
