#include "perftower/error.hpp"
#include "perftower/ideal.hpp"

#include <algorithm>

namespace perftower {

namespace {

// Fresh internal variable name; '~' keeps generated names out of user space
// while still round-tripping through the serializer.
std::string fresh_var(const AmbientPtr& amb, const std::string& base) {
    return fresh_name(amb->vars(), base);
}

std::vector<Polynomial> gb_basis_polys(const GBDataPtr& gb) {
    std::vector<Polynomial> out;
    out.reserve(gb->basis.size());
    for (const auto& e : gb->basis)
        out.push_back(e.poly);
    return out;
}

// Canonical presentation: generators are the reduced strong basis.
IdealPresentation canonical(const AmbientPtr& amb, const std::vector<Polynomial>& gens) {
    IdealPresentation tmp(amb, gens);
    return IdealPresentation(amb, tmp.basis_in_ring());
}

} // namespace

IdealPresentation groebner_basis(const std::vector<Polynomial>& gens,
                                 const MonomialOrder& order, const AmbientPtr& amb) {
    IdealPresentation tmp(amb, gens);
    return IdealPresentation(amb, tmp.basis_in_ring(order));
}

Polynomial normal_form(const Polynomial& p, const IdealPresentation& I,
                       const MonomialOrder& order) {
    if (!same_ambient(p.ambient(), I.ambient()))
        fail("ambient-mismatch", "normal_form of a polynomial outside the ideal's ambient");
    GBDataPtr gb = I.groebner(order);
    Polynomial lifted = lift_poly(p, gb->lifted_ambient);
    DivisionResult r = divide_full(lifted, gb_basis_polys(gb), order);
    return project_poly(r.remainder, I.ambient());
}

Polynomial normal_form(const Polynomial& p, const IdealPresentation& I) {
    return normal_form(p, I, MonomialOrder::grevlex());
}

MemberResult ideal_member(const Polynomial& p, const IdealPresentation& I) {
    if (!same_ambient(p.ambient(), I.ambient()))
        fail("ambient-mismatch", "membership query outside the ideal's ambient");
    MemberResult res;
    GBDataPtr gb = I.groebner(MonomialOrder::grevlex(), /*want_provenance=*/true);
    Polynomial lifted = lift_poly(p, gb->lifted_ambient);
    DivisionResult div = divide_full(lifted, gb_basis_polys(gb), gb->order);
    if (!div.remainder.is_zero())
        return res;
    res.member = true;
    std::size_t ndecl = I.gens().size();
    res.cofactors.assign(ndecl, Polynomial(I.ambient()));
    for (std::size_t j = 0; j < gb->basis.size(); ++j) {
        if (div.cofactors[j].is_zero())
            continue;
        for (std::size_t k = 0; k < ndecl; ++k) {
            Polynomial contrib = div.cofactors[j] * gb->basis[j].provenance[k];
            res.cofactors[k] += project_poly(contrib, I.ambient());
        }
        // The modulus column (if present) contributes a multiple of m, which
        // projects to zero; it is dropped on purpose.
    }
    return res;
}

bool ideal_contains(const IdealPresentation& I, const IdealPresentation& J) {
    if (!same_ambient(I.ambient(), J.ambient()))
        fail("ambient-mismatch", "containment of ideals in different ambients");
    for (const auto& g : J.gens())
        if (!normal_form(g, I).is_zero())
            return false;
    return true;
}

bool ideal_equal(const IdealPresentation& I, const IdealPresentation& J) {
    return ideal_contains(I, J) && ideal_contains(J, I);
}

IdealPresentation eliminate(const IdealPresentation& I, std::size_t first_k) {
    const AmbientPtr& amb = I.ambient();
    if (first_k > amb->nvars())
        fail("out-of-range", "eliminate: first_k exceeds the variable count");
    if (first_k == 0)
        return I;
    MonomialOrder ord = MonomialOrder::block(first_k, MonomialOrder::grevlex());
    GBDataPtr gb = I.groebner(ord);

    std::vector<std::string> rest_vars(amb->vars().begin() + static_cast<long>(first_k),
                                       amb->vars().end());
    AmbientPtr small = Ambient::make(amb->ring(), rest_vars);
    std::vector<Polynomial> gens;
    for (const auto& e : gb->basis) {
        const auto& lt = e.poly.leading_term(ord);
        bool free_of_block = true;
        for (std::size_t i = 0; i < first_k; ++i)
            if (lt.first.exp(i) != 0) {
                free_of_block = false;
                break;
            }
        if (!free_of_block)
            continue;
        // Under a block order the whole polynomial is then block-free.
        Polynomial q(small);
        for (const auto& [m, c] : e.poly.terms()) {
            std::vector<std::uint32_t> exps(m.exps().begin() + static_cast<long>(first_k),
                                            m.exps().end());
            q.add_term(Monomial(std::move(exps)), c);
        }
        if (!q.is_zero())
            gens.push_back(std::move(q));
    }
    return canonical(small, gens);
}

IdealPresentation ideal_sum(const IdealPresentation& I, const std::vector<Polynomial>& more) {
    std::vector<Polynomial> gens = I.gens();
    for (const auto& g : more) {
        if (!same_ambient(g.ambient(), I.ambient()))
            fail("ambient-mismatch", "ideal_sum term outside the ambient");
        gens.push_back(g);
    }
    return IdealPresentation(I.ambient(), gens);
}

IdealPresentation ideal_sum(const IdealPresentation& I, const IdealPresentation& J) {
    return ideal_sum(I, J.gens());
}

// Intersection by the tag trick: eliminate t from t*I + (1-t)*J.
IdealPresentation intersect(const IdealPresentation& I, const IdealPresentation& J) {
    if (!same_ambient(I.ambient(), J.ambient()))
        fail("ambient-mismatch", "intersection of ideals in different ambients");
    const AmbientPtr& amb = I.ambient();
    AmbientPtr lifted = lifted_ambient_of(amb);

    std::string tname = fresh_var(amb, "t");
    std::vector<std::string> vars;
    vars.push_back(tname);
    for (const auto& v : amb->vars())
        vars.push_back(v);
    AmbientPtr ext = Ambient::make(CoefficientRing::integers(), vars);

    std::vector<std::size_t> shift(amb->nvars());
    for (std::size_t i = 0; i < shift.size(); ++i)
        shift[i] = i + 1;

    Polynomial t = Polynomial::variable(ext, 0);
    Polynomial one = Polynomial::constant(ext, 1);

    std::vector<Polynomial> gens;
    auto side_gens = [&](const IdealPresentation& K) {
        std::vector<Polynomial> out;
        for (const auto& g : K.gens())
            out.push_back(lift_poly(g, lifted).embed(ext, shift));
        if (!amb->ring().is_integers())
            out.push_back(Polynomial::constant(ext, amb->ring().modulus()));
        return out;
    };
    for (const auto& g : side_gens(I))
        gens.push_back(t * g);
    for (const auto& g : side_gens(J))
        gens.push_back((one - t) * g);

    IdealPresentation extended(ext, gens);
    IdealPresentation inter_lifted = eliminate(extended, 1); // over Z, same tail vars
    // Re-present in the declared ring.
    AmbientPtr tail = inter_lifted.ambient();
    std::vector<Polynomial> declared;
    for (const auto& g : inter_lifted.gens()) {
        Polynomial p(amb);
        for (const auto& [m, c] : g.terms())
            p.add_term(m, c);
        if (!p.is_zero())
            declared.push_back(std::move(p));
    }
    (void)tail;
    return canonical(amb, declared);
}

namespace {

mpz_class poly_content(const Polynomial& p) {
    mpz_class c = 0;
    for (const auto& [m, k] : p.terms())
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
    return c;
}

// Primitive pseudo-remainder sequence gcd in Z[x], one variable. Contents are
// split off by Gauss's lemma; remainders are made primitive at every step.
Polynomial gcd_univariate_z(const Polynomial& f0, const Polynomial& w0) {
    const AmbientPtr& amb = f0.ambient();
    auto ord = MonomialOrder::grevlex();
    mpz_class cf = poly_content(f0), cw = poly_content(w0);
    mpz_class ccont;
    mpz_gcd(ccont.get_mpz_t(), cf.get_mpz_t(), cw.get_mpz_t());

    auto primitive = [&](const Polynomial& p) {
        mpz_class c = poly_content(p);
        if (c == 0)
            return p;
        auto q = exact_divide(p, Polynomial::constant(amb, c));
        return *q;
    };
    Polynomial a = primitive(f0), b = primitive(w0);
    if (a.total_degree() < b.total_degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        // Pseudo-remainder: repeatedly scale by lc(b) and cancel the head;
        // the degree drops strictly each step.
        std::uint64_t db = b.total_degree();
        mpz_class lb = b.leading_term(ord).second;
        Polynomial r = a;
        while (!r.is_zero() && r.total_degree() >= db) {
            const auto& lr = r.leading_term(ord);
            Monomial mono = lr.first.quotient_by(b.leading_term(ord).first);
            r = r.mul_scalar(lb) - b.mul_term(mono, lr.second);
        }
        a = b;
        b = primitive(r);
    }
    Polynomial g = primitive(a).mul_scalar(ccont == 0 ? mpz_class(1) : ccont);
    if (!g.is_zero() && g.leading_term(ord).second < 0)
        g = -g;
    return g;
}

} // namespace

IdealPresentation colon(const IdealPresentation& I, const Polynomial& g) {
    if (!same_ambient(g.ambient(), I.ambient()))
        fail("ambient-mismatch", "colon divisor outside the ambient");
    const AmbientPtr& amb = I.ambient();
    if (g.is_zero()) // (I : 0) = (1)
        return canonical(amb, {Polynomial::constant(amb, 1)});

    // Principal ideal over Z in at most one variable: (f) : g = (f / gcd(f,g))
    // in the UFD Z[x]; the generic tag-variable elimination is much slower on
    // exactly these inputs.
    if (amb->ring().is_integers() && amb->nvars() <= 1) {
        std::vector<Polynomial> nonzero;
        for (const auto& h : I.gens())
            if (!h.is_zero())
                nonzero.push_back(h);
        if (nonzero.empty())
            return canonical(amb, {});
        if (nonzero.size() == 1) {
            Polynomial d = gcd_univariate_z(nonzero[0], g);
            auto q = exact_divide(nonzero[0], d);
            if (!q)
                fail("internal", "gcd does not divide in the univariate colon");
            return canonical(amb, {*q});
        }
    }

    // Everything happens over the Z lift: membership h*g in I transfers
    // verbatim (the modulus is a generator of the lift), and over the domain
    // Z the colon is (lift(I) intersect (g)) / g with unique exact quotients.
    // Annihilator contributions of Z/m come back through the modulus column.
    AmbientPtr lifted = lifted_ambient_of(amb);
    Polynomial glift = lift_poly(g, lifted);

    std::vector<Polynomial> igens;
    for (const auto& h : I.gens())
        igens.push_back(lift_poly(h, lifted));
    if (!amb->ring().is_integers())
        igens.push_back(Polynomial::constant(lifted, amb->ring().modulus()));

    std::string tname = fresh_var(lifted, "t");
    std::vector<std::string> vars;
    vars.push_back(tname);
    for (const auto& v : lifted->vars())
        vars.push_back(v);
    AmbientPtr ext = Ambient::make(CoefficientRing::integers(), vars);
    std::vector<std::size_t> shift(lifted->nvars());
    for (std::size_t i = 0; i < shift.size(); ++i)
        shift[i] = i + 1;
    Polynomial t = Polynomial::variable(ext, 0);
    Polynomial one = Polynomial::constant(ext, 1);

    std::vector<Polynomial> gens;
    for (const auto& h : igens)
        gens.push_back(t * h.embed(ext, shift));
    gens.push_back((one - t) * glift.embed(ext, shift));

    IdealPresentation inter = eliminate(IdealPresentation(ext, gens), 1);

    std::vector<Polynomial> quotients;
    for (const auto& h : inter.gens()) {
        auto q = exact_divide(h, glift);
        if (!q)
            fail("internal", "colon: intersection generator not divisible over Z");
        quotients.push_back(project_poly(*q, amb));
    }
    return canonical(amb, quotients);
}

IdealPresentation colon_power(const IdealPresentation& I, const Polynomial& g,
                              std::uint64_t n) {
    if (n == 0)
        return canonical(I.ambient(), I.gens());
    return colon(I, g.pow(n));
}

IdealPresentation saturate(const IdealPresentation& I, const Polynomial& g) {
    IdealPresentation prev = canonical(I.ambient(), I.gens());
    for (;;) {
        IdealPresentation next = colon(prev, g);
        if (ideal_contains(prev, next)) // colon chain is increasing; containment means fixed
            return prev;
        prev = std::move(next);
    }
}

bool radical_member(const Polynomial& g, const IdealPresentation& I) {
    if (!same_ambient(g.ambient(), I.ambient()))
        fail("ambient-mismatch", "radical membership outside the ambient");
    const AmbientPtr& amb = I.ambient();
    std::string tname = fresh_var(amb, "t");
    std::vector<std::string> vars = amb->vars();
    vars.push_back(tname);
    AmbientPtr ext = Ambient::make(amb->ring(), vars);

    std::vector<std::size_t> keep(amb->nvars());
    for (std::size_t i = 0; i < keep.size(); ++i)
        keep[i] = i;

    std::vector<Polynomial> gens;
    for (const auto& h : I.gens())
        gens.push_back(h.embed(ext, keep));
    Polynomial t = Polynomial::variable(ext, ext->nvars() - 1);
    gens.push_back(Polynomial::constant(ext, 1) - t * g.embed(ext, keep));
    IdealPresentation rab(ext, gens);
    return is_unit_ideal(rab);
}

bool is_unit_ideal(const IdealPresentation& I) {
    return normal_form(Polynomial::constant(I.ambient(), 1), I).is_zero();
}

bool is_zero_ideal(const IdealPresentation& I) {
    return I.basis_in_ring().empty();
}

} // namespace perftower
