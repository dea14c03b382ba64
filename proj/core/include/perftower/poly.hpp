#ifndef PERFTOWER_POLY_HPP
#define PERFTOWER_POLY_HPP

#include "perftower/coeff.hpp"
#include "perftower/monomial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace perftower {

// Ambient polynomial ring: named variables over a coefficient ring.
// Shared immutably; compare by value with same_ambient().
class Ambient {
public:
    Ambient(CoefficientRing ring, std::vector<std::string> vars);

    static std::shared_ptr<const Ambient> make(CoefficientRing ring,
                                               std::vector<std::string> vars);

    const CoefficientRing& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::optional<std::size_t> var_index(const std::string& name) const;

    bool operator==(const Ambient& o) const { return ring_ == o.ring_ && vars_ == o.vars_; }
    bool operator!=(const Ambient& o) const { return !(*this == o); }

    std::string to_string() const; // e.g. "Z/8[x,y]"

private:
    CoefficientRing ring_;
    std::vector<std::string> vars_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
    return a == b || (a && b && *a == *b);
}

// First of base, base~1, base~2, ... not present in `taken`.
std::string fresh_name(const std::vector<std::string>& taken, const std::string& base);

// Exact multivariate polynomial. Coefficients are stored ring-reduced and
// never zero; term keys use the structural monomial order, so the
// representation is canonical for a given ambient.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(AmbientPtr amb) : ambient_(std::move(amb)) {}

    static Polynomial zero(const AmbientPtr& amb) { return Polynomial(amb); }
    static Polynomial constant(const AmbientPtr& amb, const mpz_class& c);
    static Polynomial variable(const AmbientPtr& amb, std::size_t idx);
    static Polynomial term(const AmbientPtr& amb, const Monomial& m, const mpz_class& c);

    const AmbientPtr& ambient() const { return ambient_; }
    const std::map<Monomial, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    std::uint64_t total_degree() const; // 0 for the zero polynomial
    mpz_class coeff(const Monomial& m) const;
    bool is_constant() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);

    Polynomial mul_scalar(const mpz_class& c) const;
    Polynomial mul_term(const Monomial& m, const mpz_class& c) const;
    Polynomial pow(std::uint64_t e) const;

    // d/d(var idx); formal, for etale certificates.
    Polynomial derivative(std::size_t var_idx) const;

    // Leading data under a monomial order; polynomial must be nonzero.
    const std::pair<const Monomial, mpz_class>& leading_term(const MonomialOrder& ord) const;

    // Ring change / substitution: maps variable i to images[i] (polynomials in
    // the target ambient) and coefficients through the canonical map. Throws
    // if no coefficient map exists.
    Polynomial substitute(const AmbientPtr& target,
                          const std::vector<Polynomial>& images) const;

    // Same variables, different coefficient ring (canonical map).
    Polynomial change_ring(const AmbientPtr& target) const;

    // Embeds into a bigger ambient; var_map[i] = index of old variable i.
    Polynomial embed(const AmbientPtr& target, const std::vector<std::size_t>& var_map) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    // Structural total order: by term maps; for canonical sorting of bases.
    bool structurally_less(const Polynomial& o) const;

    std::string to_string() const;

    // Internal: add c * m, reducing and dropping zeros.
    void add_term(const Monomial& m, const mpz_class& c);

private:
    void check_compatible(const Polynomial& o) const;

    AmbientPtr ambient_;
    std::map<Monomial, mpz_class> terms_;
};

} // namespace perftower

#endif
