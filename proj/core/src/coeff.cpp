#include "perftower/coeff.hpp"

#include "perftower/error.hpp"

namespace perftower {

CoefficientRing CoefficientRing::integers_mod(const mpz_class& m) {
    if (m < 2)
        fail("invalid-ring", "modulus must be >= 2, got " + m.get_str());
    return CoefficientRing(Kind::IntegersMod, m);
}

CoefficientRing CoefficientRing::prime_field(const mpz_class& p) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        fail("invalid-ring", "F_p requires a prime, got " + p.get_str());
    return integers_mod(p);
}

bool CoefficientRing::is_field() const {
    return kind_ == Kind::IntegersMod &&
           mpz_probab_prime_p(modulus_.get_mpz_t(), 30) != 0;
}

mpz_class CoefficientRing::reduce(const mpz_class& c) const {
    if (kind_ == Kind::Integers)
        return c;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
    return r;
}

std::string CoefficientRing::to_string() const {
    if (kind_ == Kind::Integers)
        return "Z";
    return "Z/" + modulus_.get_str();
}

bool coeff_map_exists(const CoefficientRing& src, const CoefficientRing& tgt) {
    if (src.is_integers())
        return true;
    if (tgt.is_integers())
        return false;
    return mpz_divisible_p(src.modulus().get_mpz_t(), tgt.modulus().get_mpz_t()) != 0;
}

CoefficientRing coeff_tensor(const CoefficientRing& a, const CoefficientRing& b) {
    if (a.is_integers() && b.is_integers())
        return CoefficientRing::integers();
    if (a.is_integers())
        return b;
    if (b.is_integers())
        return a;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.modulus().get_mpz_t(), b.modulus().get_mpz_t());
    if (g == 1)
        fail("invalid-ring", "tensor of " + a.to_string() + " and " + b.to_string() +
                                 " is the zero ring");
    return CoefficientRing::integers_mod(g);
}

} // namespace perftower
