#include "perftower/tower.hpp"

#include "perftower/error.hpp"

#include <algorithm>

namespace perftower {

std::string zariskian_semantics_name(ZariskianSemantics s) {
    switch (s) {
    case ZariskianSemantics::Computed:
        return "computed";
    case ZariskianSemantics::Declared:
        return "declared";
    case ZariskianSemantics::AfterZariskization:
        return "after_zariskization";
    }
    return "?";
}

namespace {

// Canonical lift of an F_p polynomial back into an ambient over Z or Z/m;
// representatives are already in [0, p).
Polynomial lift_to(const Polynomial& p, const AmbientPtr& amb) {
    Polynomial out(amb);
    for (const auto& [m, c] : p.terms())
        out.add_term(m, c);
    return out;
}

// Substitution of a map given by quotient-level images, lifted to the
// original ambient of the target level.
Polynomial subst_with_lifted_images(const Polynomial& p, const AlgebraMap& quotient_map,
                                    const AmbientPtr& target_amb) {
    std::vector<Polynomial> lifted;
    lifted.reserve(quotient_map.images().size());
    for (const auto& im : quotient_map.images())
        lifted.push_back(lift_to(im, target_amb));
    return p.substitute(target_amb, lifted);
}

// Preimage ideal of K (in the target ambient) under the ambient-level
// substitution x_i -> images[i]; the source is treated as a free algebra.
IdealPresentation substitution_preimage(const AmbientPtr& src_amb,
                                        const std::vector<Polynomial>& images,
                                        const IdealPresentation& K) {
    PresentedAlgebra free_src(src_amb, {});
    PresentedAlgebra quot(K.ambient(), K.gens());
    AlgebraMap map(free_src, quot, images);
    return map.kernel();
}

Verdict vb(bool b) { return b ? Verdict::Pass : Verdict::Fail; }

} // namespace

Tower::Tower(std::vector<PresentedAlgebra> levels, std::vector<AlgebraMap> transitions,
             Polynomial f0, std::optional<Polynomial> f1, mpz_class p,
             ZariskianSemantics semantics)
    : levels_(std::move(levels)), transitions_(std::move(transitions)), f0_(std::move(f0)),
      f1_(std::move(f1)), p_(std::move(p)), semantics_(semantics) {
    if (levels_.empty())
        fail("precondition", "a tower needs at least one level");
    if (transitions_.size() + 1 != levels_.size())
        fail("precondition", "level/transition count mismatch");
    if (mpz_probab_prime_p(p_.get_mpz_t(), 30) == 0)
        fail("precondition", "tower prime p = " + p_.get_str() + " is not prime");
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (!same_ambient(transitions_[i].source().ambient(), levels_[i].ambient()) ||
            !same_ambient(transitions_[i].target().ambient(), levels_[i + 1].ambient()))
            fail("ambient-mismatch", "transition " + std::to_string(i) +
                                         " does not connect its levels");
    }
    if (!same_ambient(f0_.ambient(), levels_[0].ambient()))
        fail("ambient-mismatch", "f0 outside level 0");
    if (f1_ && levels_.size() > 1 && !same_ambient(f1_->ambient(), levels_[1].ambient()))
        fail("ambient-mismatch", "f1 outside level 1");

    // f0 images along the tower.
    f0_imgs_.push_back(levels_[0].nf(f0_));
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        f0_imgs_.push_back(transitions_[i].apply(f0_imgs_.back()));

    f1_imgs_.assign(levels_.size(), Polynomial());
    if (f1_ && levels_.size() > 1) {
        f1_imgs_[1] = levels_[1].nf(*f1_);
        for (std::size_t i = 1; i + 1 < levels_.size(); ++i)
            f1_imgs_[i + 1] = transitions_[i].apply(f1_imgs_[i]);
    }

    base_condition_ =
        ideal_member(levels_[0].constant(p_), ideal_sum(levels_[0].relations(), {f0_imgs_[0]}))
            .member;

    // Char-p quotient presentations R_i / I0 R_i and the reduced transitions.
    CoefficientRing fp = CoefficientRing::prime_field(p_);
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        AmbientPtr qamb = Ambient::make(fp, levels_[i].ambient()->vars());
        std::vector<Polynomial> rels;
        for (const auto& r : levels_[i].relations().gens()) {
            Polynomial q = r.change_ring(qamb);
            if (!q.is_zero())
                rels.push_back(std::move(q));
        }
        Polynomial f0q = f0_imgs_[i].change_ring(qamb);
        if (!f0q.is_zero())
            rels.push_back(std::move(f0q));
        quotients_.emplace_back(qamb, std::move(rels));
    }
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        std::vector<Polynomial> images;
        for (const auto& im : transitions_[i].images())
            images.push_back(im.change_ring(quotients_[i + 1].ambient()));
        reduced_.emplace_back(quotients_[i], quotients_[i + 1], std::move(images));
    }

    pairs_f0_ = std::make_shared<std::vector<PrincipalPair>>();
    for (std::size_t i = 0; i < levels_.size(); ++i)
        pairs_f0_->emplace_back(levels_[i], f0_imgs_[i]);
    pairs_f1_ = std::make_shared<std::vector<PrincipalPair>>();
    if (f1_)
        for (std::size_t i = 1; i < levels_.size(); ++i)
            pairs_f1_->emplace_back(levels_[i], f1_imgs_[i]);
}

const Polynomial& Tower::f1_at(std::size_t i) const {
    if (!f1_ || i == 0 || i >= levels_.size())
        fail("precondition", "f1 image requested at level " + std::to_string(i));
    return f1_imgs_.at(i);
}

PresentedAlgebra Tower::quotient_mod_f1(std::size_t level) const {
    if (!f1_ || level == 0)
        fail("precondition", "quotient mod f1 needs f1 and level >= 1");
    CoefficientRing fp = CoefficientRing::prime_field(p_);
    AmbientPtr qamb = Ambient::make(fp, levels_[level].ambient()->vars());
    std::vector<Polynomial> rels;
    for (const auto& r : levels_[level].relations().gens()) {
        Polynomial q = r.change_ring(qamb);
        if (!q.is_zero())
            rels.push_back(std::move(q));
    }
    Polynomial f1q = f1_imgs_[level].change_ring(qamb);
    if (!f1q.is_zero())
        rels.push_back(std::move(f1q));
    return PresentedAlgebra(qamb, std::move(rels));
}

const PrincipalPair& Tower::pair_f0(std::size_t i) const { return pairs_f0_->at(i); }

const PrincipalPair& Tower::pair_f1(std::size_t i) const {
    if (!f1_ || i == 0)
        fail("precondition", "pair_f1 needs f1 and level >= 1");
    return pairs_f1_->at(i - 1);
}

Tower Tower::with_semantics(ZariskianSemantics s) const {
    Tower t = *this;
    t.semantics_ = s;
    return t;
}

// --- Frobenius projections ------------------------------------------------------

FrobeniusProjection frobenius_projection(const Tower& t, std::size_t i) {
    const AlgebraMap& red = t.reduced_transition(i);
    const PresentedAlgebra& Qup = t.quotient(i + 1);
    const PresentedAlgebra& Qdn = t.quotient(i);
    unsigned long p = t.p().get_ui();

    std::vector<Polynomial> images;
    for (std::size_t k = 0; k < Qup.ambient()->nvars(); ++k) {
        Polynomial xp = Qup.nf(Qup.var(k).pow(p));
        auto pre = red.image_member(xp);
        if (!pre)
            fail("no-preimage", "p-th power of generator " + Qup.ambient()->vars()[k] +
                                    " has no preimage under the reduced transition");
        images.push_back(*pre);
    }

    FrobeniusProjection out;
    out.level = i;
    out.map = AlgebraMap(Qup, Qdn, images); // may throw ill-defined-map
    out.identity_verified = true;
    for (std::size_t k = 0; k < Qup.ambient()->nvars(); ++k) {
        Polynomial back = red.apply(out.map.images()[k]);
        if (!Qup.elements_equal(back, Qup.var(k).pow(p))) {
            out.identity_verified = false;
            break;
        }
    }
    // Semilinearity with the Frobenius twist on the target action:
    // F(t(r) x) = r^p F(x).
    out.semilinear_verified = true;
    std::vector<Polynomial> rs, xs;
    rs.push_back(Qdn.constant(1));
    for (std::size_t k = 0; k < Qdn.ambient()->nvars(); ++k)
        rs.push_back(Qdn.var(k));
    xs.push_back(Qup.constant(1));
    for (std::size_t k = 0; k < Qup.ambient()->nvars(); ++k)
        xs.push_back(Qup.var(k));
    for (const auto& r : rs)
        for (const auto& x : xs) {
            Polynomial lhs = out.map.apply(red.apply(r) * x);
            Polynomial rhs = Qdn.nf(r.pow(p) * out.map.apply(x));
            if (!Qdn.elements_equal(lhs, rhs)) {
                out.semilinear_verified = false;
                break;
            }
        }
    return out;
}

// --- condition (a)-(f) checks ------------------------------------------------------

namespace {

// Axiom verdicts plus the constructed Frobenius projections, so that the
// downstream checks do not recompute them.
struct AxiomContext {
    ConditionReport report;
    std::vector<std::optional<FrobeniusProjection>> frob;
};

AxiomContext build_axioms(const Tower& t);

} // namespace

ConditionReport check_axioms(const Tower& t) { return build_axioms(t).report; }

namespace {

AxiomContext build_axioms(const Tower& t) {
    AxiomContext ctx;
    ConditionReport& rep = ctx.report;
    const std::size_t N = t.transition_count();

    bool a_ok = t.base_condition();
    rep.add("a", 0, vb(a_ok), a_ok ? "" : t.p().get_str() + " not in (f0) + relations");

    std::vector<bool> b_ok(N, false), c_ok(N, false);
    std::vector<std::optional<FrobeniusProjection>> frob(N);

    for (std::size_t i = 0; i < N; ++i) {
        if (!a_ok) {
            rep.add("b", static_cast<int>(i), Verdict::NotApplicable, "", "requires (a)");
            rep.add("c", static_cast<int>(i), Verdict::NotApplicable, "", "requires (a)");
            continue;
        }
        b_ok[i] = t.reduced_transition(i).is_injective();
        rep.add("b", static_cast<int>(i), vb(b_ok[i]),
                b_ok[i] ? "" : "kernel of the reduced transition is nonzero");

        const PresentedAlgebra& Qup = t.quotient(i + 1);
        bool ok = true;
        std::string witness;
        for (std::size_t k = 0; k < Qup.ambient()->nvars(); ++k) {
            Polynomial xp = Qup.nf(Qup.var(k).pow(t.p().get_ui()));
            if (!t.reduced_transition(i).image_member(xp)) {
                ok = false;
                witness = "generator " + Qup.ambient()->vars()[k];
                break;
            }
        }
        c_ok[i] = ok;
        rep.add("c", static_cast<int>(i), vb(ok), witness);

        if (b_ok[i] && c_ok[i]) {
            try {
                frob[i] = frobenius_projection(t, i);
            } catch (const Error&) {
                frob[i].reset();
            }
        }
    }

    // (d): Frobenius projections surjective.
    for (std::size_t i = 0; i < N; ++i) {
        if (!frob[i]) {
            rep.add("d", static_cast<int>(i), Verdict::NotApplicable, "", "requires (b),(c)");
            continue;
        }
        bool ok = frob[i]->map.is_surjective();
        rep.add("d", static_cast<int>(i), vb(ok),
                ok ? "" : "a generator is missed by the Frobenius projection");
    }

    // (e): per level, under the tower's semantics.
    for (std::size_t i = 0; i < t.level_count(); ++i) {
        switch (t.semantics()) {
        case ZariskianSemantics::Computed: {
            bool ok = ZariskOracle(t.pair_f0(i)).is_zariskian();
            rep.add("e", static_cast<int>(i), vb(ok),
                    ok ? "" : "f0 is not nilpotent modulo the relations (Jacobson scope)",
                    "computed");
            break;
        }
        case ZariskianSemantics::Declared:
            rep.add("e", static_cast<int>(i), Verdict::Pass, "", "declared");
            break;
        case ZariskianSemantics::AfterZariskization:
            rep.add("e", static_cast<int>(i), Verdict::Pass, "", "after_zariskization");
            break;
        }
    }

    // (f-1): I1^p = I0 R_1 as ideals of level 1.
    bool f1_ok = false;
    if (!t.has_f1() || t.level_count() < 2) {
        rep.add("f1", 1, Verdict::NotApplicable, "", "no f1 declared");
    } else {
        const PresentedAlgebra& R1 = t.level(1);
        IdealPresentation lhs =
            ideal_sum(R1.relations(), {t.f1_at(1).pow(t.p().get_ui())});
        IdealPresentation rhs = ideal_sum(R1.relations(), {t.f0_at(1)});
        f1_ok = ideal_equal(lhs, rhs);
        rep.add("f1", 1, vb(f1_ok), f1_ok ? "" : "(f1^p) + J differs from (f0) + J");
    }

    // (f-2): Ker(F_i) = I1 (R_{i+1}/I0).
    for (std::size_t i = 0; i < N; ++i) {
        if (!frob[i] || !t.has_f1()) {
            rep.add("f2", static_cast<int>(i), Verdict::NotApplicable, "",
                    !t.has_f1() ? "no f1 declared" : "requires (b),(c)");
            continue;
        }
        IdealPresentation ker = frob[i]->map.kernel();
        const PresentedAlgebra& Qup = t.quotient(i + 1);
        Polynomial f1q = t.f1_at(i + 1).change_ring(Qup.ambient());
        IdealPresentation i1 = ideal_sum(Qup.relations(), {f1q});
        bool ok = ideal_equal(ker, i1);
        rep.add("f2", static_cast<int>(i), vb(ok),
                ok ? "" : "kernel of the Frobenius projection differs from (f1)");
    }

    // Degree-1 anchor: the lift of the Frobenius projection carries the first
    // colon ideal of (R_{i+1}, f1) into that of (R_i, f0), which is exactly
    // what makes the cyclic assignment f1 -> f0 well-defined in degree 1.
    for (std::size_t i = 0; i < N; ++i) {
        if (!frob[i] || !t.has_f1()) {
            rep.add("star", static_cast<int>(i), Verdict::NotApplicable, "",
                    !t.has_f1() ? "no f1 declared" : "requires (b),(c)");
            continue;
        }
        const IdealPresentation& c1_up = t.pair_f1(i + 1).colon_ladder(1);
        const IdealPresentation& c1_dn = t.pair_f0(i).colon_ladder(1);
        bool ok = true;
        std::string witness;
        for (const auto& g : c1_up.gens()) {
            Polynomial img =
                subst_with_lifted_images(g, frob[i]->map, t.level(i).ambient());
            if (!normal_form(img, c1_dn).is_zero()) {
                ok = false;
                witness = g.to_string();
                break;
            }
        }
        rep.add("star", static_cast<int>(i), vb(ok), witness, "degree-1 anchor");
    }
    ctx.frob = std::move(frob);
    return ctx;
}

struct GPrereqs {
    bool ok = false;
    std::string reason;
    const FrobeniusProjection* frob = nullptr;
};

// (a)-(d) and (f) at transition i, read off the axiom context.
GPrereqs g_prereqs(const AxiomContext& ctx, std::size_t i) {
    const ConditionReport& ax = ctx.report;
    GPrereqs out;
    auto pass = [&](const std::string& c, int lvl) {
        return ax.verdict_of(c, lvl) == Verdict::Pass;
    };
    if (!pass("a", 0)) {
        out.reason = "requires (a)";
        return out;
    }
    if (!pass("b", static_cast<int>(i)) || !pass("c", static_cast<int>(i))) {
        out.reason = "requires (b),(c)";
        return out;
    }
    if (!pass("d", static_cast<int>(i))) {
        out.reason = "requires (d)";
        return out;
    }
    if (!pass("f1", 1) || !pass("f2", static_cast<int>(i))) {
        out.reason = "requires (f)";
        return out;
    }
    out.frob = &*ctx.frob[i];
    out.ok = true;
    return out;
}

ConditionReport check_g_ctx(const Tower& t, const AxiomContext& ctx) {
    ConditionReport rep;

    std::vector<bool> small(t.level_count(), false);
    for (std::size_t i = 0; i < t.level_count(); ++i) {
        PrincipalPair pair = t.pair_f0(i);
        small[i] = pair.small_torsion();
        rep.add("g.small_torsion", static_cast<int>(i), vb(small[i]),
                small[i] ? "" : "f0 * torsion escapes the relations; torsion " +
                                    pair.torsion().to_string());
    }

    for (std::size_t i = 0; i < t.transition_count(); ++i) {
        GPrereqs pre = g_prereqs(ctx, i);
        if (!pre.ok || !small[i] || !small[i + 1]) {
            std::string why = pre.ok ? "requires small torsion" : pre.reason;
            rep.add("g.decompose", static_cast<int>(i), Verdict::NotApplicable, "", why);
            rep.add("g.injective", static_cast<int>(i), Verdict::NotApplicable, "", why);
            rep.add("g.surjective", static_cast<int>(i), Verdict::NotApplicable, "", why);
            continue;
        }
        const PrincipalPair& up = t.pair_f0(i + 1);
        const PrincipalPair& dn = t.pair_f0(i);
        const IdealPresentation& Ji = t.level(i).relations();
        const IdealPresentation& Jup = t.level(i + 1).relations();

        // Decompose the lift of each torsion generator along T + (f0) + J.
        IdealPresentation split =
            ideal_sum(ideal_sum(dn.torsion(), {t.f0_at(i)}), Ji.gens());
        bool dec_ok = true;
        std::string dec_witness;
        std::vector<Polynomial> images;
        for (const auto& z : up.torsion().gens()) {
            Polynomial w =
                subst_with_lifted_images(z, pre.frob->map, t.level(i).ambient());
            MemberResult mr = ideal_member(w, split);
            if (!mr.member) {
                dec_ok = false;
                dec_witness = z.to_string();
                break;
            }
            Polynomial y(t.level(i).ambient());
            for (std::size_t k = 0; k < dn.torsion().gens().size(); ++k)
                y += mr.cofactors[k] * dn.torsion().gens()[k];
            images.push_back(normal_form(y, Ji));
        }
        rep.add("g.decompose", static_cast<int>(i), vb(dec_ok), dec_witness);
        if (!dec_ok) {
            rep.add("g.injective", static_cast<int>(i), Verdict::NotApplicable, "",
                    "decomposition failed");
            rep.add("g.surjective", static_cast<int>(i), Verdict::NotApplicable, "",
                    "decomposition failed");
            continue;
        }

        // Injectivity: torsion meets (f1) + I0 + J only inside J upstairs.
        IdealPresentation wall = ideal_sum(
            IdealPresentation(t.level(i + 1).ambient(), {t.f1_at(i + 1), t.f0_at(i + 1)}),
            Jup.gens());
        bool inj = ideal_contains(Jup, intersect(up.torsion(), wall));
        rep.add("g.injective", static_cast<int>(i), vb(inj),
                inj ? "" : "a torsion element dies under the projection");

        // Surjectivity on the generators of the lower torsion.
        IdealPresentation image_ideal(t.level(i).ambient(), images);
        bool surj = ideal_contains(ideal_sum(image_ideal, Ji.gens()), dn.torsion());
        std::string surj_witness;
        if (!surj)
            for (const auto& z : dn.torsion().gens())
                if (!ideal_member(z, ideal_sum(image_ideal, Ji.gens())).member) {
                    surj_witness = z.to_string() + " has no torsion preimage";
                    break;
                }
        rep.add("g.surjective", static_cast<int>(i), vb(surj), surj_witness);
    }
    return rep;
}

ConditionReport check_g_prime_ctx(const Tower& t, const AxiomContext& ctx,
                                  std::uint64_t n_max) {
    ConditionReport rep;

    std::vector<bool> small(t.level_count(), false);
    for (std::size_t i = 0; i < t.level_count(); ++i) {
        PrincipalPair pair = t.pair_f0(i);
        small[i] = pair.small_torsion();
        rep.add("gp.small_torsion", static_cast<int>(i), vb(small[i]),
                small[i] ? "" : "f0 * torsion escapes the relations");
    }

    for (std::size_t i = 0; i < t.transition_count(); ++i) {
        GPrereqs pre = g_prereqs(ctx, i);
        if (!pre.ok || !small[i] || !small[i + 1]) {
            std::string why = pre.ok ? "requires small torsion" : pre.reason;
            rep.add("gp.phi0", static_cast<int>(i), Verdict::NotApplicable, "", why);
            rep.add("gp.deg1", static_cast<int>(i), Verdict::NotApplicable, "", why);
            rep.add("gp.stab", static_cast<int>(i), Verdict::NotApplicable, "", why);
            continue;
        }

        // Phi0: the Frobenius projection factored through R_{i+1}/I1.
        bool phi0_ok = false;
        std::string phi0_witness;
        try {
            PresentedAlgebra Q1 = t.quotient_mod_f1(i + 1);
            AlgebraMap phi0(Q1, t.quotient(i), pre.frob->map.images());
            phi0_ok = phi0.is_injective() && phi0.is_surjective();
            if (!phi0_ok)
                phi0_witness = "factored projection is not bijective";
        } catch (const Error& e) {
            phi0_witness = e.what();
        }
        rep.add("gp.phi0", static_cast<int>(i), vb(phi0_ok), phi0_witness);

        // Degree 1: preimage-ideal equality for the cyclic assignment f1 -> f0.
        const IdealPresentation& c1_up = t.pair_f1(i + 1).colon_ladder(1);
        const IdealPresentation& c1_dn = t.pair_f0(i).colon_ladder(1);
        std::vector<Polynomial> lifted;
        for (const auto& im : pre.frob->map.images())
            lifted.push_back(lift_to(im, t.level(i).ambient()));
        IdealPresentation pre_ideal =
            substitution_preimage(t.level(i + 1).ambient(), lifted, c1_dn);
        bool deg1 = ideal_equal(pre_ideal, c1_up);
        rep.add("gp.deg1", static_cast<int>(i), vb(deg1),
                deg1 ? "" : "degree-1 colon ideals do not correspond");

        // Stabilization of both ladders (automatic under small torsion; still
        // verified).
        bool stab = true;
        std::string stab_witness;
        for (std::uint64_t n = 1; n + 1 < std::max<std::uint64_t>(n_max, 2) + 1; ++n) {
            if (!grn_lemma_check(t.pair_f1(i + 1), n).iso) {
                stab = false;
                stab_witness = "upper ladder moves at degree " + std::to_string(n);
                break;
            }
            if (!grn_lemma_check(t.pair_f0(i), n).iso) {
                stab = false;
                stab_witness = "lower ladder moves at degree " + std::to_string(n);
                break;
            }
        }
        rep.add("gp.stab", static_cast<int>(i), vb(stab), stab_witness);
    }
    return rep;
}

Verdict aggregate(const ConditionReport& rep, const std::vector<std::string>& conds,
                  const std::vector<int>& levels) {
    bool any_na = false;
    for (std::size_t k = 0; k < conds.size(); ++k) {
        Verdict v = rep.verdict_of(conds[k], levels[k]);
        if (v == Verdict::Fail)
            return Verdict::Fail;
        if (v == Verdict::NotApplicable)
            any_na = true;
    }
    return any_na ? Verdict::NotApplicable : Verdict::Pass;
}

} // namespace

ConditionReport check_g(const Tower& t) { return check_g_ctx(t, build_axioms(t)); }

ConditionReport check_g_prime(const Tower& t, std::uint64_t n_max) {
    return check_g_prime_ctx(t, build_axioms(t), n_max);
}

ConditionReport theorem_a_report(const Tower& t, std::uint64_t n_max) {
    AxiomContext ctx = build_axioms(t);
    ConditionReport rep = ctx.report;
    ConditionReport g = check_g_ctx(t, ctx);
    ConditionReport gp = check_g_prime_ctx(t, ctx, n_max);
    rep.merge(g);
    rep.merge(gp);

    bool e_ok = true;
    for (std::size_t i = 0; i < t.level_count(); ++i)
        e_ok = e_ok && rep.verdict_of("e", static_cast<int>(i)) == Verdict::Pass;

    bool violation = false;
    for (std::size_t i = 0; i < t.transition_count(); ++i) {
        int ii = static_cast<int>(i);
        bool gate = rep.verdict_of("d", ii) == Verdict::Pass &&
                    rep.verdict_of("f1", 1) == Verdict::Pass &&
                    rep.verdict_of("f2", ii) == Verdict::Pass &&
                    (e_ok || rep.verdict_of("star", ii) == Verdict::Pass);
        if (!gate) {
            rep.add("thmA.agree", ii, Verdict::NotApplicable, "", "preconditions not met");
            continue;
        }
        Verdict vg = aggregate(
            g, {"g.small_torsion", "g.small_torsion", "g.decompose", "g.injective",
                "g.surjective"},
            {ii, ii + 1, ii, ii, ii});
        Verdict vgp = aggregate(
            gp, {"gp.small_torsion", "gp.small_torsion", "gp.phi0", "gp.deg1", "gp.stab"},
            {ii, ii + 1, ii, ii, ii});
        bool agree = vg == vgp;
        if (!agree)
            violation = true;
        rep.add("thmA.agree", ii, vb(agree),
                agree ? "" : "(g) is " + verdict_name(vg) + " but (g') is " +
                                  verdict_name(vgp));
    }
    if (violation)
        rep.add("thmA.violation", -1, Verdict::Fail,
                "equivalence of (g) and (g') violated; this indicates a checker bug");
    return rep;
}

// --- structural properties -------------------------------------------------------------

ConditionReport structural_props(const Tower& t, std::uint64_t n_max) {
    ConditionReport rep;

    // Graded injectivity of the transitions.
    for (std::size_t i = 0; i < t.transition_count(); ++i) {
        bool ok = true;
        std::string witness;
        for (std::uint64_t n = 0; n <= n_max && ok; ++n) {
            IdealPresentation pre = substitution_preimage(
                t.level(i).ambient(), t.transition(i).images(), t.pair_f0(i + 1).colon_ladder(n));
            if (!ideal_equal(pre, t.pair_f0(i).colon_ladder(n))) {
                ok = false;
                witness = "degree " + std::to_string(n);
            }
        }
        rep.add("grt.inj", static_cast<int>(i), vb(ok), witness);
    }

    // Frobenius comparison of the two filtrations on each higher level, over
    // the char-p fibers where x -> x^p is the honest Frobenius.
    CoefficientRing fp = CoefficientRing::prime_field(t.p());
    for (std::size_t i = 1; i < t.level_count(); ++i) {
        if (!t.has_f1() || !t.base_condition()) {
            rep.add("phip.inj", static_cast<int>(i), Verdict::NotApplicable, "",
                    t.has_f1() ? "requires (a)" : "no f1 declared");
            continue;
        }
        AmbientPtr famb = Ambient::make(fp, t.level(i).ambient()->vars());
        auto rebase = [&](const IdealPresentation& K) {
            std::vector<Polynomial> gens;
            for (const auto& g : K.gens()) {
                Polynomial q = g.change_ring(famb);
                if (!q.is_zero())
                    gens.push_back(std::move(q));
            }
            return IdealPresentation(famb, gens);
        };
        std::vector<Polynomial> frob_images;
        for (std::size_t k = 0; k < famb->nvars(); ++k)
            frob_images.push_back(
                Polynomial::variable(famb, k).pow(t.p().get_ui()));
        bool ok = true;
        std::string witness;
        for (std::uint64_t n = 0; n <= n_max && ok; ++n) {
            IdealPresentation down = rebase(t.pair_f0(i).colon_ladder(n));
            IdealPresentation up = rebase(t.pair_f1(i).colon_ladder(n));
            IdealPresentation pre = substitution_preimage(famb, frob_images, down);
            if (!ideal_equal(pre, up)) {
                ok = false;
                witness = "degree " + std::to_string(n);
            }
        }
        rep.add("phip.inj", static_cast<int>(i), vb(ok), witness);
    }

    // Reducedness of char-p levels.
    for (std::size_t i = 0; i < t.level_count(); ++i) {
        if (!has_char_p(t.level(i))) {
            rep.add("reduced", static_cast<int>(i), Verdict::NotApplicable, "",
                    "characteristic 0 level");
            continue;
        }
        bool ok = is_reduced(t.level(i));
        rep.add("reduced", static_cast<int>(i), vb(ok),
                ok ? "" : "Frobenius kernel " + frobenius_kernel(t.level(i)).to_string());
    }

    // Dimension table: levels (char p only), special fibers, graded rings.
    std::vector<int> level_dims, fiber_dims, gr_dims;
    for (std::size_t i = 0; i < t.level_count(); ++i) {
        int ii = static_cast<int>(i);
        if (has_char_p(t.level(i))) {
            int d = krull_dim(t.level(i));
            level_dims.push_back(d);
            rep.add("dim.level", ii, Verdict::Pass, std::to_string(d));
        } else {
            rep.add("dim.level", ii, Verdict::NotApplicable, "", "characteristic 0 level");
        }
        try {
            PresentedAlgebra fiber = change_coefficients(t.level(i), fp);
            int d = krull_dim(fiber);
            fiber_dims.push_back(d);
            rep.add("dim.fiber", ii, Verdict::Pass, std::to_string(d));
        } catch (const Error& e) {
            rep.add("dim.fiber", ii, Verdict::NotApplicable, e.what());
        }
        try {
            PresentedAlgebra gr = gr_algebra_presentation(t.pair_f0(i));
            int d = krull_dim(change_coefficients(gr, fp));
            gr_dims.push_back(d);
            rep.add("dim.gr", ii, Verdict::Pass, std::to_string(d),
                    "graded ring over the char-p fiber");
        } catch (const Error& e) {
            rep.add("dim.gr", ii, Verdict::NotApplicable, e.what());
        }
    }
    auto all_equal = [](const std::vector<int>& v) {
        for (int d : v)
            if (d != v.front())
                return false;
        return true;
    };
    rep.add("dim.levels_equal", -1,
            level_dims.empty() ? Verdict::NotApplicable : vb(all_equal(level_dims)), "",
            "global GB dimension; local hypotheses not checked");
    rep.add("dim.gr_equal", -1,
            gr_dims.empty() ? Verdict::NotApplicable : vb(all_equal(gr_dims)));
    if (!level_dims.empty() && !gr_dims.empty())
        rep.add("dim.gr_vs_level", -1, vb(level_dims.front() == gr_dims.front()), "",
                "tilt-side dimension read off the graded ring");
    else
        rep.add("dim.gr_vs_level", -1, Verdict::NotApplicable);
    return rep;
}

} // namespace perftower
