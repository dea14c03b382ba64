#ifndef PERFTOWER_MONOMIAL_HPP
#define PERFTOWER_MONOMIAL_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace perftower {

// Exponent vector; the ambient fixes the variable count.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
    static Monomial one(std::size_t nvars) { return Monomial(std::vector<std::uint32_t>(nvars, 0)); }
    static Monomial variable(std::size_t nvars, std::size_t idx, std::uint32_t e = 1);

    std::size_t nvars() const { return exps_.size(); }
    std::uint32_t exp(std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint32_t>& exps() const { return exps_; }
    std::uint64_t total_degree() const;
    bool is_one() const;

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    // Requires divisibility.
    Monomial quotient_by(const Monomial& m) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    // Structural order (exponent vectors, lexicographic); independent of any
    // monomial order, used for canonical container keys.
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

private:
    std::vector<std::uint32_t> exps_;
};

// Term orders: lex, grevlex, and block orders for elimination. A block order
// compares the first elim_count variables with grevlex, then the rest with
// the inner order; monomials involving a block-1 variable dominate all
// monomials free of them, which is what elimination needs.
class MonomialOrder {
public:
    enum class Kind { Lex, Grevlex, Block };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0, nullptr); }
    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0, nullptr); }
    static MonomialOrder block(std::size_t elim_count, MonomialOrder inner);

    Kind kind() const { return kind_; }
    std::size_t elim_count() const { return elim_count_; }
    const MonomialOrder& inner() const { return *inner_; }

    // Three-way comparison: negative, zero, positive as a < b, a == b, a > b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    std::string to_string() const;

private:
    MonomialOrder(Kind k, std::size_t ec, std::shared_ptr<const MonomialOrder> in)
        : kind_(k), elim_count_(ec), inner_(std::move(in)) {}

    Kind kind_;
    std::size_t elim_count_;
    std::shared_ptr<const MonomialOrder> inner_;
};

} // namespace perftower

#endif
