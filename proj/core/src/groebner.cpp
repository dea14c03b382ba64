#include "perftower/error.hpp"
#include "perftower/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace perftower {

AmbientPtr lifted_ambient_of(const AmbientPtr& amb) {
    if (amb->ring().is_integers())
        return amb;
    return Ambient::make(CoefficientRing::integers(), amb->vars());
}

Polynomial lift_poly(const Polynomial& p, const AmbientPtr& lifted) {
    // Coefficients of a Z/m polynomial are stored as canonical representatives
    // in [0, m), so the lift is a raw term copy.
    Polynomial r(lifted);
    for (const auto& [m, c] : p.terms())
        r.add_term(m, c);
    return r;
}

Polynomial project_poly(const Polynomial& p, const AmbientPtr& declared) {
    Polynomial r(declared);
    for (const auto& [m, c] : p.terms())
        r.add_term(m, c);
    return r;
}

namespace {

struct LeadInfo {
    Monomial lm;
    mpz_class lc; // > 0
};

LeadInfo lead_of(const Polynomial& p, const MonomialOrder& ord) {
    const auto& lt = p.leading_term(ord);
    return {lt.first, lt.second};
}

// One working element of the evolving basis.
struct WorkElt {
    Polynomial poly; // lc > 0
    std::vector<Polynomial> prov;
    Monomial lm;
    mpz_class lc;
};

void normalize_sign(Polynomial& p, std::vector<Polynomial>& prov, const MonomialOrder& ord) {
    if (p.is_zero())
        return;
    if (p.leading_term(ord).second < 0) {
        p = -p;
        for (auto& q : prov)
            q = -q;
    }
}

std::string monomial_key(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(m.exp(i));
    }
    return s;
}

// Full strong reduction of p by the given elements under ord, with cofactors.
// Every coefficient of the remainder is its own canonical Euclidean remainder
// against every applicable leading coefficient, which makes the remainder
// unique for a strong basis.
struct Reducer {
    const std::vector<WorkElt>& basis;
    const MonomialOrder& ord;

    struct MonoGreater {
        const MonomialOrder* ord;
        bool operator()(const Monomial& a, const Monomial& b) const {
            int c = ord->compare(a, b);
            if (c != 0)
                return c > 0;
            return a.exps() < b.exps(); // tie-break for set uniqueness
        }
    };

    DivisionResult run(const Polynomial& p, std::vector<char> const* skip = nullptr) const {
        DivisionResult res;
        res.remainder = p;
        res.cofactors.assign(basis.size(), Polynomial(p.ambient()));
        std::set<Monomial, MonoGreater> pending{MonoGreater{&ord}};
        for (const auto& [m, c] : p.terms())
            pending.insert(m);
        while (!pending.empty()) {
            Monomial m = *pending.begin();
            pending.erase(pending.begin());
            for (;;) {
                mpz_class c = res.remainder.coeff(m);
                if (c == 0)
                    break;
                bool stepped = false;
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    if (skip && (*skip)[j])
                        continue;
                    const WorkElt& g = basis[j];
                    if (g.poly.is_zero() || !g.lm.divides(m))
                        continue;
                    mpz_class q, rem;
                    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(),
                                g.lc.get_mpz_t());
                    if (q == 0)
                        continue;
                    Monomial mono = m.quotient_by(g.lm);
                    for (const auto& [tm, tc] : g.poly.terms()) {
                        Monomial target = mono * tm;
                        res.remainder.add_term(target, -q * tc);
                        if (!(target == m))
                            pending.insert(target);
                    }
                    res.cofactors[j].add_term(mono, q);
                    c = rem;
                    stepped = true;
                }
                if (!stepped)
                    break;
            }
        }
        return res;
    }
};

struct PairKey {
    std::uint64_t deg;
    std::string lcm_key;
    std::size_t i, j;
    bool operator<(const PairKey& o) const {
        if (deg != o.deg)
            return deg < o.deg;
        if (lcm_key != o.lcm_key)
            return lcm_key < o.lcm_key;
        if (i != o.i)
            return i < o.i;
        return j < o.j;
    }
};

} // namespace

DivisionResult divide_full(const Polynomial& p, const std::vector<Polynomial>& basis,
                           const MonomialOrder& order) {
    std::vector<WorkElt> elts;
    elts.reserve(basis.size());
    for (const auto& g : basis) {
        WorkElt w{g, {}, Monomial(), 0};
        if (!g.is_zero()) {
            if (g.leading_term(order).second < 0)
                w.poly = -g; // reduction is sign-insensitive; cofactor sign handled below
            auto l = lead_of(w.poly, order);
            w.lm = l.lm;
            w.lc = l.lc;
        }
        elts.push_back(std::move(w));
    }
    Reducer red{elts, order};
    DivisionResult r = red.run(p);
    // Fix cofactor signs for divisors we flipped.
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (!basis[j].is_zero() && basis[j].leading_term(order).second < 0)
            r.cofactors[j] = -r.cofactors[j];
    return r;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& g) {
    if (g.is_zero())
        return std::nullopt;
    auto ord = MonomialOrder::grevlex();
    Polynomial rest = p;
    Polynomial q(p.ambient());
    auto gl = g.leading_term(ord);
    while (!rest.is_zero()) {
        auto rl = rest.leading_term(ord);
        if (!gl.first.divides(rl.first))
            return std::nullopt;
        mpz_class qc, rc;
        mpz_tdiv_qr(qc.get_mpz_t(), rc.get_mpz_t(), rl.second.get_mpz_t(),
                    gl.second.get_mpz_t());
        if (rc != 0)
            return std::nullopt;
        Monomial mono = rl.first.quotient_by(gl.first);
        q.add_term(mono, qc);
        rest -= g.mul_term(mono, qc);
    }
    return q;
}

GBDataPtr compute_strong_gb_uncached(const AmbientPtr& lifted_ambient,
                                     const std::vector<Polynomial>& lifted_gens,
                                     bool has_modulus_gen, const MonomialOrder& order,
                                     bool want_provenance) {
    if (!lifted_ambient->ring().is_integers())
        fail("internal", "GB engine expects a lifted ambient over Z");

    auto gb = std::make_shared<GBData>();
    gb->lifted_ambient = lifted_ambient;
    gb->order = order;
    gb->lifted_gens = lifted_gens;
    gb->has_modulus_gen = has_modulus_gen;
    gb->has_provenance = want_provenance;

    const std::size_t ngens = lifted_gens.size();
    std::vector<WorkElt> basis;
    auto unit_prov = [&](std::size_t k) {
        std::vector<Polynomial> prov;
        if (want_provenance) {
            prov.assign(ngens, Polynomial(lifted_ambient));
            prov[k] = Polynomial::constant(lifted_ambient, 1);
        }
        return prov;
    };

    std::set<PairKey> queue;
    auto push_elt = [&](Polynomial p, std::vector<Polynomial> prov) {
        normalize_sign(p, prov, order);
        auto l = lead_of(p, order);
        std::size_t n = basis.size();
        basis.push_back(WorkElt{std::move(p), std::move(prov), l.lm, l.lc});
        for (std::size_t i = 0; i < n; ++i) {
            if (basis[i].poly.is_zero())
                continue;
            Monomial L = Monomial::lcm(basis[i].lm, basis[n].lm);
            queue.insert(PairKey{L.total_degree(), monomial_key(L), i, n});
        }
    };

    for (std::size_t k = 0; k < ngens; ++k)
        if (!lifted_gens[k].is_zero())
            push_elt(lifted_gens[k], unit_prov(k));

    Reducer red{basis, order};
    auto reduce_and_add = [&](Polynomial p, std::vector<Polynomial> prov) {
        DivisionResult r = red.run(p);
        if (r.remainder.is_zero())
            return;
        if (want_provenance)
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (!r.cofactors[j].is_zero())
                    for (std::size_t k = 0; k < ngens; ++k)
                        prov[k] -= r.cofactors[j] * basis[j].prov[k];
        push_elt(std::move(r.remainder), std::move(prov));
    };

    // Buchberger with Euclidean S-pairs and gcd (G-) pairs. No pair-skipping
    // criteria: the product criterion is unsound for G-pairs over Z, and the
    // inputs here are desk scale.
    while (!queue.empty()) {
        PairKey key = *queue.begin();
        queue.erase(queue.begin());
        // Copy the pair data: reduce_and_add may grow the basis vector and
        // invalidate references into it.
        WorkElt f = basis[key.i];
        WorkElt g = basis[key.j];
        if (f.poly.is_zero() || g.poly.is_zero())
            continue;
        Monomial L = Monomial::lcm(f.lm, g.lm);
        Monomial mf = L.quotient_by(f.lm);
        Monomial mg = L.quotient_by(g.lm);

        mpz_class cl;
        mpz_lcm(cl.get_mpz_t(), f.lc.get_mpz_t(), g.lc.get_mpz_t());
        {
            Polynomial s = f.poly.mul_term(mf, cl / f.lc) - g.poly.mul_term(mg, cl / g.lc);
            std::vector<Polynomial> prov;
            if (want_provenance) {
                prov.resize(ngens);
                for (std::size_t k = 0; k < ngens; ++k)
                    prov[k] = f.prov[k].mul_term(mf, cl / f.lc) -
                              g.prov[k].mul_term(mg, cl / g.lc);
            }
            reduce_and_add(std::move(s), std::move(prov));
        }

        bool f_div_g = mpz_divisible_p(g.lc.get_mpz_t(), f.lc.get_mpz_t()) != 0;
        bool g_div_f = mpz_divisible_p(f.lc.get_mpz_t(), g.lc.get_mpz_t()) != 0;
        if (!f_div_g && !g_div_f) {
            mpz_class d, u, v;
            mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), f.lc.get_mpz_t(),
                       g.lc.get_mpz_t());
            Polynomial gp = f.poly.mul_term(mf, u) + g.poly.mul_term(mg, v);
            std::vector<Polynomial> prov;
            if (want_provenance) {
                prov.resize(ngens);
                for (std::size_t k = 0; k < ngens; ++k)
                    prov[k] = f.prov[k].mul_term(mf, u) + g.prov[k].mul_term(mg, v);
            }
            reduce_and_add(std::move(gp), std::move(prov));
        }
    }

    // Minimalize: drop elements whose leading term is strongly divisible by
    // another's (monomial divides, coefficient divides exactly).
    std::vector<char> removed(basis.size(), 0);
    auto strongly_divides = [](const WorkElt& a, const WorkElt& b) {
        return a.lm.divides(b.lm) &&
               mpz_divisible_p(b.lc.get_mpz_t(), a.lc.get_mpz_t()) != 0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = basis.size(); i-- > 0;) {
            if (removed[i] || basis[i].poly.is_zero())
                continue;
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (j == i || removed[j] || basis[j].poly.is_zero())
                    continue;
                bool same_lt = basis[j].lm == basis[i].lm && basis[j].lc == basis[i].lc;
                if (strongly_divides(basis[j], basis[i]) && (!same_lt || j < i)) {
                    removed[i] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    // Sanity: removed elements must reduce to zero over the kept set.
    std::vector<char> skip = removed;
    {
        Reducer kept_red{basis, order};
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!removed[i] || basis[i].poly.is_zero())
                continue;
            DivisionResult r = kept_red.run(basis[i].poly, &skip);
            if (!r.remainder.is_zero())
                fail("internal", "minimalization dropped a non-redundant element");
        }
    }

    // Tail-reduce survivors against each other; leading terms are stable here
    // (any head reduction would contradict minimality of the completed basis).
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!removed[i] && !basis[i].poly.is_zero())
            kept.push_back(i);
    for (std::size_t idx : kept) {
        std::vector<char> skip_self = removed;
        skip_self[idx] = 1;
        Reducer self_red{basis, order};
        DivisionResult r = self_red.run(basis[idx].poly, &skip_self);
        if (r.remainder.is_zero())
            fail("internal", "tail reduction killed a minimal basis element");
        auto l = lead_of(r.remainder, order);
        if (!(l.lm == basis[idx].lm) || l.lc != basis[idx].lc) {
            std::string dump = "tail reduction moved a leading term: " +
                               basis[idx].poly.to_string() + " -> " +
                               r.remainder.to_string() + "; kept basis:";
            for (std::size_t q : kept)
                dump += "\n  " + basis[q].poly.to_string();
            fail("internal", dump);
        }
        if (want_provenance)
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (!r.cofactors[j].is_zero())
                    for (std::size_t k = 0; k < ngens; ++k)
                        basis[idx].prov[k] -= r.cofactors[j] * basis[j].prov[k];
        basis[idx].poly = std::move(r.remainder);
    }

    std::vector<const WorkElt*> final_elts;
    for (std::size_t idx : kept)
        final_elts.push_back(&basis[idx]);
    std::sort(final_elts.begin(), final_elts.end(), [&](const WorkElt* a, const WorkElt* b) {
        int c = order.compare(a->lm, b->lm);
        if (c != 0)
            return c < 0;
        if (a->lc != b->lc)
            return a->lc < b->lc;
        return a->poly.structurally_less(b->poly);
    });
    for (const WorkElt* w : final_elts)
        gb->basis.push_back(GBElement{w->poly, w->prov});
    return gb;
}

// --- IdealPresentation -----------------------------------------------------

IdealPresentation::IdealPresentation(AmbientPtr ambient, std::vector<Polynomial> gens)
    : ambient_(std::move(ambient)), gens_(std::move(gens)) {
    if (!ambient_)
        fail("internal", "ideal without ambient");
    if (!ambient_->ring().is_integers() && ambient_->ring().modulus() < 2)
        fail("invalid-ring", "modulus must be >= 2");
    for (const auto& g : gens_)
        if (!same_ambient(g.ambient(), ambient_))
            fail("ambient-mismatch", "generator outside the declared ambient");
}

IdealPresentation::IdealPresentation(const IdealPresentation& o)
    : ambient_(o.ambient_), gens_(o.gens_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    cache_ = o.cache_;
}

IdealPresentation& IdealPresentation::operator=(const IdealPresentation& o) {
    if (this == &o)
        return *this;
    std::lock_guard<std::mutex> lock(o.mu_);
    ambient_ = o.ambient_;
    gens_ = o.gens_;
    cache_ = o.cache_;
    return *this;
}

IdealPresentation::IdealPresentation(IdealPresentation&& o) noexcept
    : ambient_(std::move(o.ambient_)), gens_(std::move(o.gens_)), cache_(std::move(o.cache_)) {}

IdealPresentation& IdealPresentation::operator=(IdealPresentation&& o) noexcept {
    ambient_ = std::move(o.ambient_);
    gens_ = std::move(o.gens_);
    cache_ = std::move(o.cache_);
    return *this;
}

GBDataPtr IdealPresentation::groebner(const MonomialOrder& order, bool want_provenance) const {
    std::string key = order.to_string();
    {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& [k, v] : cache_)
            if (k == key && (v->has_provenance || !want_provenance))
                return v;
    }
    AmbientPtr lifted = lifted_ambient_of(ambient_);
    std::vector<Polynomial> lifted_gens;
    lifted_gens.reserve(gens_.size() + 1);
    for (const auto& g : gens_)
        lifted_gens.push_back(lift_poly(g, lifted));
    bool has_mod = false;
    if (!ambient_->ring().is_integers()) {
        lifted_gens.push_back(Polynomial::constant(lifted, ambient_->ring().modulus()));
        has_mod = true;
    }
    GBDataPtr gb = compute_strong_gb(lifted, lifted_gens, has_mod, order, want_provenance);
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [k, v] : cache_)
        if (k == key) {
            if (gb->has_provenance && !v->has_provenance)
                v = gb;
            return v;
        }
    cache_.emplace_back(key, gb);
    return gb;
}

GBDataPtr IdealPresentation::groebner() const { return groebner(MonomialOrder::grevlex()); }

std::vector<Polynomial> IdealPresentation::basis_in_ring(const MonomialOrder& order) const {
    GBDataPtr gb = groebner(order);
    std::vector<Polynomial> out;
    for (const auto& e : gb->basis) {
        Polynomial p = project_poly(e.poly, ambient_);
        if (!p.is_zero())
            out.push_back(std::move(p));
    }
    return out;
}

std::vector<Polynomial> IdealPresentation::basis_in_ring() const {
    return basis_in_ring(MonomialOrder::grevlex());
}

std::string IdealPresentation::to_string() const {
    std::vector<Polynomial> b = basis_in_ring();
    std::string s = "(";
    if (b.empty())
        s += "0";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i)
            s += ", ";
        s += b[i].to_string();
    }
    return s + ")";
}

} // namespace perftower
