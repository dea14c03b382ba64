#include "perftower/poly.hpp"

#include "perftower/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace perftower {

Ambient::Ambient(CoefficientRing ring, std::vector<std::string> vars)
    : ring_(std::move(ring)), vars_(std::move(vars)) {
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty())
            fail("invalid-ring", "empty variable name");
        if (!seen.insert(v).second)
            fail("invalid-ring", "duplicate variable name '" + v + "'");
    }
}

std::shared_ptr<const Ambient> Ambient::make(CoefficientRing ring,
                                             std::vector<std::string> vars) {
    return std::make_shared<const Ambient>(std::move(ring), std::move(vars));
}

std::optional<std::size_t> Ambient::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return i;
    return std::nullopt;
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
    auto used = [&](const std::string& s) {
        return std::find(taken.begin(), taken.end(), s) != taken.end();
    };
    if (!used(base))
        return base;
    for (int k = 1;; ++k) {
        std::string cand = base + "~" + std::to_string(k);
        if (!used(cand))
            return cand;
    }
}

std::string Ambient::to_string() const {
    std::string s = ring_.to_string() + "[";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i)
            s += ",";
        s += vars_[i];
    }
    return s + "]";
}

Polynomial Polynomial::constant(const AmbientPtr& amb, const mpz_class& c) {
    Polynomial p(amb);
    p.add_term(Monomial::one(amb->nvars()), c);
    return p;
}

Polynomial Polynomial::variable(const AmbientPtr& amb, std::size_t idx) {
    Polynomial p(amb);
    p.add_term(Monomial::variable(amb->nvars(), idx), 1);
    return p;
}

Polynomial Polynomial::term(const AmbientPtr& amb, const Monomial& m, const mpz_class& c) {
    Polynomial p(amb);
    p.add_term(m, c);
    return p;
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.total_degree());
    return d;
}

mpz_class Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

void Polynomial::add_term(const Monomial& m, const mpz_class& c) {
    mpz_class r = ambient_->ring().reduce(c);
    if (r == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, r);
    if (!inserted) {
        it->second = ambient_->ring().reduce(it->second + r);
        if (it->second == 0)
            terms_.erase(it);
    }
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (!same_ambient(ambient_, o.ambient_))
        fail("ambient-mismatch", "operands live in different ambients");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ambient_);
    for (const auto& [m, c] : terms_)
        r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(ambient_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_)
            r.add_term(m1 * m2, c1 * c2);
    return r;
}

Polynomial Polynomial::mul_scalar(const mpz_class& c) const {
    Polynomial r(ambient_);
    for (const auto& [m, k] : terms_)
        r.add_term(m, k * c);
    return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const mpz_class& c) const {
    Polynomial r(ambient_);
    for (const auto& [m1, c1] : terms_)
        r.add_term(m1 * m, c1 * c);
    return r;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial r = Polynomial::constant(ambient_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1)
            r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t var_idx) const {
    Polynomial r(ambient_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.exp(var_idx);
        if (e == 0)
            continue;
        auto exps = m.exps();
        exps[var_idx] = e - 1;
        r.add_term(Monomial(std::move(exps)), c * e);
    }
    return r;
}

const std::pair<const Monomial, mpz_class>&
Polynomial::leading_term(const MonomialOrder& ord) const {
    if (terms_.empty())
        fail("internal", "leading term of zero polynomial");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.less(best->first, it->first))
            best = it;
    return *best;
}

Polynomial Polynomial::substitute(const AmbientPtr& target,
                                  const std::vector<Polynomial>& images) const {
    if (images.size() != ambient_->nvars())
        fail("ambient-mismatch", "substitution image count differs from variable count");
    if (!coeff_map_exists(ambient_->ring(), target->ring()))
        fail("invalid-ring", "no coefficient map " + ambient_->ring().to_string() +
                                 " -> " + target->ring().to_string());
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < images.size(); ++i) {
            std::uint32_t e = m.exp(i);
            if (e)
                t = t * images[i].pow(e);
        }
        r += t;
    }
    return r;
}

Polynomial Polynomial::change_ring(const AmbientPtr& target) const {
    if (target->vars() != ambient_->vars())
        fail("ambient-mismatch", "change_ring requires identical variables");
    if (!coeff_map_exists(ambient_->ring(), target->ring()))
        fail("invalid-ring", "no coefficient map for change_ring");
    Polynomial r(target);
    for (const auto& [m, c] : terms_)
        r.add_term(m, c);
    return r;
}

Polynomial Polynomial::embed(const AmbientPtr& target,
                             const std::vector<std::size_t>& var_map) const {
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        std::vector<std::uint32_t> exps(target->nvars(), 0);
        for (std::size_t i = 0; i < var_map.size(); ++i)
            exps[var_map[i]] = m.exp(i);
        r.add_term(Monomial(std::move(exps)), c);
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return same_ambient(ambient_, o.ambient_) && terms_ == o.terms_;
}

bool Polynomial::structurally_less(const Polynomial& o) const {
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& a, const auto& b) {
            if (a.first != b.first)
                return a.first < b.first;
            return a.second < b.second;
        });
}

std::string Polynomial::to_string() const {
    if (terms_.empty())
        return "0";
    // Display descending by grevlex; canonical and order-independent.
    auto ord = MonomialOrder::grevlex();
    std::vector<const std::pair<const Monomial, mpz_class>*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_)
        ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
        int c = ord.compare(a->first, b->first);
        if (c != 0)
            return c > 0;
        return a->first.exps() > b->first.exps();
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : ts) {
        mpz_class c = t->second;
        bool neg = c < 0;
        if (first) {
            if (neg)
                out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg)
            c = -c;
        first = false;
        std::string vars;
        for (std::size_t i = 0; i < ambient_->nvars(); ++i) {
            std::uint32_t e = t->first.exp(i);
            if (!e)
                continue;
            if (!vars.empty())
                vars += "*";
            vars += ambient_->vars()[i];
            if (e > 1)
                vars += "^" + std::to_string(e);
        }
        if (vars.empty()) {
            out << c.get_str();
        } else if (c == 1) {
            out << vars;
        } else {
            out << c.get_str() << "*" << vars;
        }
    }
    return out.str();
}

} // namespace perftower
