#ifndef PERFTOWER_COEFF_HPP
#define PERFTOWER_COEFF_HPP

#include <gmpxx.h>
#include <string>

namespace perftower {

// The coefficient ring of an ambient polynomial ring: the integers or the
// integers modulo m (m >= 2). Finite prime fields are IntegersMod(p) with a
// primality check at the factory.
class CoefficientRing {
public:
    enum class Kind { Integers, IntegersMod };

    static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0); }
    static CoefficientRing integers_mod(const mpz_class& m);
    // Prime field F_p; throws invalid-ring unless p is prime.
    static CoefficientRing prime_field(const mpz_class& p);

    Kind kind() const { return kind_; }
    const mpz_class& modulus() const { return modulus_; } // 0 for Integers
    mpz_class characteristic() const { return modulus_; }

    bool is_integers() const { return kind_ == Kind::Integers; }
    bool is_field() const; // true iff Z/p with p prime

    // Canonical representative: identity over Z, value in [0, m) over Z/m.
    mpz_class reduce(const mpz_class& c) const;

    std::string to_string() const; // "Z" or "Z/m"

    bool operator==(const CoefficientRing& o) const {
        return kind_ == o.kind_ && modulus_ == o.modulus_;
    }
    bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

private:
    CoefficientRing(Kind k, mpz_class m) : kind_(k), modulus_(std::move(m)) {}

    Kind kind_;
    mpz_class modulus_;
};

// Whether a canonical coefficient map C_src -> C_tgt exists (Z -> anything,
// Z/m -> Z/m' with m' | m).
bool coeff_map_exists(const CoefficientRing& src, const CoefficientRing& tgt);

// Coefficient ring of a tensor product over Z: Z (x) Z = Z, Z (x) Z/m = Z/m,
// Z/a (x) Z/b = Z/gcd(a,b).
CoefficientRing coeff_tensor(const CoefficientRing& a, const CoefficientRing& b);

} // namespace perftower

#endif
