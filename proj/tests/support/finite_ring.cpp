#include "finite_ring.hpp"

#include <perftower/error.hpp>

namespace perftower::testsupport {

FiniteRing::FiniteRing(PresentedAlgebra algebra, std::size_t max_card)
    : algebra_(std::move(algebra)) {
    const AmbientPtr& amb = algebra_.ambient();
    if (!amb->ring().is_field())
        fail("precondition", "finite model needs prime field coefficients");
    unsigned long p = amb->ring().modulus().get_ui();

    auto ord = MonomialOrder::grevlex();
    std::vector<Monomial> lts;
    for (const auto& g : algebra_.relations().basis_in_ring(ord))
        lts.push_back(g.leading_term(ord).first);

    // Standard monomials by breadth-first closure under variable
    // multiplication; the quotient must be finite within max_card.
    auto reducible = [&](const Monomial& m) {
        for (const auto& l : lts)
            if (l.divides(m))
                return true;
        return false;
    };
    std::vector<Monomial> frontier = {Monomial::one(amb->nvars())};
    if (!reducible(frontier[0]))
        std_monomials_.push_back(frontier[0]);
    else
        frontier.clear(); // zero ring
    while (!frontier.empty()) {
        std::vector<Monomial> next;
        for (const auto& m : frontier)
            for (std::size_t i = 0; i < amb->nvars(); ++i) {
                Monomial cand = m * Monomial::variable(amb->nvars(), i);
                if (reducible(cand))
                    continue;
                bool seen = false;
                for (const auto& s : std_monomials_)
                    if (s == cand) {
                        seen = true;
                        break;
                    }
                if (!seen) {
                    std_monomials_.push_back(cand);
                    next.push_back(cand);
                }
            }
        frontier = std::move(next);
        double card = 1;
        for (std::size_t k = 0; k < std_monomials_.size(); ++k)
            card *= static_cast<double>(p);
        if (card > static_cast<double>(max_card) * 2)
            fail("precondition", "quotient is too large (or infinite) to enumerate");
    }

    std::size_t n = std_monomials_.size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        total *= p;
        if (total > max_card)
            fail("precondition", "quotient exceeds the enumeration bound");
    }
    for (std::size_t code = 0; code < total; ++code) {
        Polynomial e(amb);
        std::size_t c = code;
        for (std::size_t k = 0; k < n; ++k) {
            unsigned long digit = c % p;
            c /= p;
            if (digit)
                e.add_term(std_monomials_[k], digit);
        }
        elements_.push_back(algebra_.nf(e));
    }
}

bool FiniteRing::principal_member_brute(const Polynomial& g, const Polynomial& target) const {
    Polynomial t = algebra_.nf(target);
    for (const auto& h : elements_)
        if (mul(h, g) == t)
            return true;
    return false;
}

bool FiniteRing::has_nonzero_nilpotent() const {
    for (const auto& e : elements_) {
        if (e.is_zero())
            continue;
        Polynomial pow = e;
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            pow = mul(pow, e);
            if (pow.is_zero())
                return true;
        }
    }
    return false;
}

} // namespace perftower::testsupport
