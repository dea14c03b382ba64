#include "perftower/monomial.hpp"

#include "perftower/error.hpp"

#include <algorithm>
#include <string>

namespace perftower {

Monomial Monomial::variable(std::size_t nvars, std::size_t idx, std::uint32_t e) {
    std::vector<std::uint32_t> v(nvars, 0);
    v.at(idx) = e;
    return Monomial(std::move(v));
}

std::uint64_t Monomial::total_degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_)
        d += e;
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e == 0; });
}

bool Monomial::divides(const Monomial& m) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > m.exps_[i])
            return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    std::vector<std::uint32_t> v(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        v[i] = exps_[i] + m.exps_[i];
    return Monomial(std::move(v));
}

Monomial Monomial::quotient_by(const Monomial& m) const {
    std::vector<std::uint32_t> v(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (m.exps_[i] > exps_[i])
            fail("internal", "monomial quotient without divisibility");
        v[i] = exps_[i] - m.exps_[i];
    }
    return Monomial(std::move(v));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> v(a.exps_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::max(a.exps_[i], b.exps_[i]);
    return Monomial(std::move(v));
}

MonomialOrder MonomialOrder::block(std::size_t elim_count, MonomialOrder inner) {
    return MonomialOrder(Kind::Block, elim_count,
                         std::make_shared<const MonomialOrder>(std::move(inner)));
}

namespace {

int cmp_lex(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
            std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int cmp_grevlex(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da < db ? -1 : 1;
    // Equal degree: smaller exponent in the last differing variable wins.
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i])
            return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    const auto& ea = a.exps();
    const auto& eb = b.exps();
    switch (kind_) {
    case Kind::Lex:
        return cmp_lex(ea, eb, 0, ea.size());
    case Kind::Grevlex:
        return cmp_grevlex(ea, eb, 0, ea.size());
    case Kind::Block: {
        int c = cmp_grevlex(ea, eb, 0, std::min(elim_count_, ea.size()));
        if (c != 0)
            return c;
        // Compare tails with the inner order on the remaining variables.
        std::vector<std::uint32_t> ta(ea.begin() + static_cast<long>(elim_count_), ea.end());
        std::vector<std::uint32_t> tb(eb.begin() + static_cast<long>(elim_count_), eb.end());
        return inner_->compare(Monomial(std::move(ta)), Monomial(std::move(tb)));
    }
    }
    return 0;
}

std::string MonomialOrder::to_string() const {
    switch (kind_) {
    case Kind::Lex:
        return "lex";
    case Kind::Grevlex:
        return "grevlex";
    case Kind::Block:
        return "block(" + std::to_string(elim_count_) + "," + inner_->to_string() + ")";
    }
    return "?";
}

} // namespace perftower
