#include "perftower/pairs.hpp"

#include "perftower/error.hpp"

namespace perftower {

PrincipalPair::PrincipalPair(PresentedAlgebra algebra, Polynomial generator)
    : algebra_(std::move(algebra)), f_(std::move(generator)) {
    if (!same_ambient(f_.ambient(), algebra_.ambient()))
        fail("ambient-mismatch", "pair generator outside the algebra's ambient");
}

PrincipalPair::PrincipalPair(const PrincipalPair& o) : algebra_(o.algebra_), f_(o.f_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    torsion_ = o.torsion_;
    small_torsion_ = o.small_torsion_;
    ladder_ = o.ladder_;
}

PrincipalPair& PrincipalPair::operator=(const PrincipalPair& o) {
    if (this == &o)
        return *this;
    std::lock_guard<std::mutex> lock(o.mu_);
    algebra_ = o.algebra_;
    f_ = o.f_;
    torsion_ = o.torsion_;
    small_torsion_ = o.small_torsion_;
    ladder_ = o.ladder_;
    return *this;
}

const IdealPresentation& PrincipalPair::torsion() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!torsion_)
        torsion_ = saturate(algebra_.relations(), f_);
    return *torsion_;
}

bool PrincipalPair::small_torsion() const {
    torsion();
    std::lock_guard<std::mutex> lock(mu_);
    if (!small_torsion_) {
        bool ok = true;
        for (const auto& t : torsion_->gens())
            if (!normal_form(f_ * t, algebra_.relations()).is_zero()) {
                ok = false;
                break;
            }
        small_torsion_ = ok;
    }
    return *small_torsion_;
}

IdealPresentation PrincipalPair::bounded_torsion(std::uint64_t n) const {
    return colon_power(algebra_.relations(), f_, n);
}

const IdealPresentation& PrincipalPair::colon_ladder(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ladder_.find(n);
    if (it == ladder_.end()) {
        IdealPresentation with_power = ideal_sum(algebra_.relations(), {f_.pow(n + 1)});
        it = ladder_.emplace(n, colon(with_power, f_.pow(n))).first;
    }
    return it->second;
}

std::vector<Polynomial> PrincipalPair::torsion_generators() const {
    std::vector<Polynomial> out;
    for (const auto& g : torsion().gens()) {
        Polynomial r = algebra_.nf(g);
        if (!r.is_zero())
            out.push_back(std::move(r));
    }
    return out;
}

PresentedAlgebra PrincipalPair::quotient_mod_generator() const {
    std::vector<Polynomial> rels = algebra_.relations().gens();
    rels.push_back(f_);
    return PresentedAlgebra(algebra_.ambient(), std::move(rels));
}

std::string PrincipalPair::to_string() const {
    return "(" + algebra_.to_string() + ", " + f_.to_string() + ")";
}

TorsionAnalysis torsion_analysis(const PrincipalPair& p, std::uint64_t ladder_depth) {
    TorsionAnalysis out;
    out.torsion = p.torsion();
    out.small_torsion = p.small_torsion();
    for (std::uint64_t n = 1; n <= ladder_depth; ++n)
        out.bounded.push_back(p.bounded_torsion(n));
    return out;
}

GradedPiece gr_piece(const PrincipalPair& p, std::uint64_t n) {
    return GradedPiece{n, p.colon_ladder(n), p.generator().pow(n)};
}

GrnCheck grn_lemma_check(const PrincipalPair& p, std::uint64_t n) {
    if (n < 1)
        fail("out-of-range", "multiplication ladder check needs n >= 1");
    GrnCheck out;
    out.iso = ideal_equal(p.colon_ladder(n), p.colon_ladder(n + 1));

    // M[f^{n+1}] subset of M[f^n] + f M, as ambient ideals.
    const IdealPresentation& J = p.algebra().relations();
    IdealPresentation upper = p.bounded_torsion(n + 1);
    IdealPresentation lower = ideal_sum(ideal_sum(p.bounded_torsion(n), {p.generator()}), J);
    out.cond3 = ideal_contains(lower, upper);
    out.agree = out.iso == out.cond3;
    return out;
}

ExactnessCheck exactness_check(const PrincipalPair& p) {
    ExactnessCheck out;
    const IdealPresentation& J = p.algebra().relations();
    const Polynomial& f = p.generator();

    // ker(mult by f: A/fA -> fA/f^2A) == image of A[f], i.e. C1 == (J:f)+(f)+J.
    IdealPresentation rhs = ideal_sum(ideal_sum(colon(J, f), {f}), J);
    out.ex1 = ideal_equal(p.colon_ladder(1), rhs) ? Verdict::Pass : Verdict::Fail;

    if (!p.small_torsion()) {
        out.ex2 = Verdict::NotApplicable;
        return out;
    }
    bool tors_is_first_layer = ideal_equal(p.torsion(), ideal_sum(colon(J, f), J));
    IdealPresentation principal = ideal_sum(IdealPresentation(p.algebra().ambient(), {f}), J);
    bool injective = ideal_contains(J, intersect(p.torsion(), principal));
    out.ex2 = (tors_is_first_layer && injective) ? Verdict::Pass : Verdict::Fail;
    return out;
}

// --- torsion maps ---------------------------------------------------------------

TorsionMap make_torsion_map(const PrincipalPair& src, const PrincipalPair& tgt,
                            const AlgebraMap& base, std::vector<Polynomial> images) {
    if (images.size() != src.torsion().gens().size())
        fail("ambient-mismatch", "torsion map image count differs from torsion generators");
    for (const auto& im : images)
        if (!same_ambient(im.ambient(), tgt.algebra().ambient()))
            fail("ambient-mismatch", "torsion image outside the target ambient");
    return TorsionMap{src, tgt, base, std::move(images), false};
}

namespace {

Polynomial apply_base(const AlgebraMap& base, const Polynomial& p) {
    // Base maps of pairs share ambients with their quotient presentations, so
    // the ambient-level substitution applies to any ambient polynomial.
    return p.substitute(base.target().ambient(), base.images());
}

// Does the square through the torsion-to-quotient maps commute on generator i?
bool torsion_square_commutes(const TorsionMap& tm, std::size_t gen_idx, Polynomial* witness) {
    const auto& src = tm.source;
    const auto& tgt = tm.target;
    Polynomial z = src.torsion().gens()[gen_idx];
    Polynomial lhs = apply_base(tm.base, z);
    Polynomial rhs = tm.images[gen_idx];
    IdealPresentation mod = ideal_sum(tgt.algebra().relations(), {tgt.generator()});
    Polynomial diff = normal_form(lhs - rhs, mod);
    if (diff.is_zero())
        return true;
    if (witness)
        *witness = diff;
    return false;
}

} // namespace

GradedMapFamily extend_to_graded(const AlgebraMap& degree0, const TorsionMap& torsion,
                                 std::uint64_t n_max) {
    const PrincipalPair& A = torsion.source;
    const PrincipalPair& B = torsion.target;
    if (!A.small_torsion() || !B.small_torsion())
        fail("precondition", "graded extension requires small torsion on both pairs");

    for (std::size_t i = 0; i < A.torsion().gens().size(); ++i) {
        Polynomial w;
        if (!torsion_square_commutes(torsion, i, &w))
            fail("diagram-violation", "torsion square fails on generator " +
                                          A.torsion().gens()[i].to_string() +
                                          "; difference " + w.to_string());
    }

    GradedMapFamily fam{A, B, degree0, n_max, false, false};

    // Degreewise well-definedness: the ambient lift carries C_n^A into C_n^B.
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        const IdealPresentation& CnA = A.colon_ladder(n);
        const IdealPresentation& CnB = B.colon_ladder(n);
        for (const auto& g : CnA.gens()) {
            Polynomial img = apply_base(degree0, g);
            if (!normal_form(img, CnB).is_zero())
                fail("diagram-violation", "degree " + std::to_string(n) +
                                              " image escapes the colon ideal: " +
                                              g.to_string());
        }
    }

    // Injectivity reporting: preimage of C_n^B equals C_n^A.
    bool preimage_equal = true;
    for (std::uint64_t n = 0; n <= n_max && preimage_equal; ++n) {
        PresentedAlgebra quotient(B.algebra().ambient(), B.colon_ladder(n).gens());
        AlgebraMap into_quotient(degree0.source(), quotient, degree0.images());
        IdealPresentation pre = into_quotient.kernel();
        preimage_equal = ideal_equal(pre, A.colon_ladder(n));
    }
    bool deg0_injective = degree0.is_injective();
    fam.injective_reported = deg0_injective && preimage_equal;
    fam.iso_reported = fam.injective_reported && degree0.is_surjective();
    return fam;
}

TorsionMap restrict_to_torsion(const GradedMapFamily& family) {
    const PrincipalPair& A = family.source;
    const PrincipalPair& B = family.target;
    if (!A.small_torsion() || !B.small_torsion())
        fail("precondition", "torsion restriction requires small torsion on both pairs");

    const Polynomial& f = A.generator();
    const Polynomial& g = B.generator();
    const IdealPresentation& JB = B.algebra().relations();

    // Anchor: the degree-1 cyclic convention f -> g must match the lift.
    Polynomial anchor_diff = apply_base(family.degree0, f) - g;
    IdealPresentation anchor_mod = ideal_sum(JB, {g * g});
    if (!normal_form(anchor_diff, anchor_mod).is_zero())
        fail("anchor-violation", "lift of the source generator is not the target generator "
                                 "modulo its square; difference " +
                                     anchor_diff.to_string());

    // Uniqueness of the decomposition: T_B meets (g) + J_B inside J_B.
    IdealPresentation principal = ideal_sum(IdealPresentation(B.algebra().ambient(), {g}), JB);
    if (!ideal_contains(JB, intersect(B.torsion(), principal)))
        fail("exactness-violation",
             "target torsion meets the principal ideal; small torsion was misreported");

    // Split each lifted torsion generator along T_B + (g) + J_B.
    std::vector<Polynomial> images;
    IdealPresentation split_ideal = ideal_sum(ideal_sum(B.torsion(), {g}), JB);
    for (const auto& z : A.torsion().gens()) {
        Polynomial w = apply_base(family.degree0, z);
        MemberResult mr = ideal_member(w, split_ideal);
        if (!mr.member)
            fail("exactness-violation",
                 "lift " + w.to_string() + " admits no torsion decomposition");
        Polynomial y(B.algebra().ambient());
        for (std::size_t k = 0; k < B.torsion().gens().size(); ++k)
            y += mr.cofactors[k] * B.torsion().gens()[k];
        images.push_back(normal_form(y, JB));
    }

    TorsionMap out = make_torsion_map(A, B, family.degree0, std::move(images));
    for (std::size_t i = 0; i < out.images.size(); ++i) {
        Polynomial w;
        if (!torsion_square_commutes(out, i, &w))
            fail("internal", "constructed torsion map fails its own square");
    }
    out.bijective_reported = family.iso_reported;
    return out;
}

// --- Zariskization oracle ----------------------------------------------------------

bool ZariskOracle::is_zariskian() const {
    return radical_member(pair_.generator(), pair_.algebra().relations());
}

bool ZariskOracle::kernel_member_for(const Polynomial& z, const Polynomial& f) const {
    IdealPresentation I = ideal_sum(pair_.algebra().relations(), {f * z});
    return normal_form(z, I).is_zero();
}

bool ZariskOracle::kernel_member(const Polynomial& z) const {
    return kernel_member_for(z, pair_.generator());
}

bool ZariskOracle::fractions_equal(const Polynomial& x, const Polynomial& s,
                                   const Polynomial& y, const Polynomial& t) const {
    const Polynomial& f = pair_.generator();
    const IdealPresentation& J = pair_.algebra().relations();
    auto denominator_ok = [&](const Polynomial& d) {
        IdealPresentation fJ = ideal_sum(IdealPresentation(d.ambient(), {f}), J);
        return normal_form(d - Polynomial::constant(d.ambient(), 1), fJ).is_zero();
    };
    if (!denominator_ok(s))
        fail("malformed-denominator", s.to_string() + " is not of the form 1 + f*(element)");
    if (!denominator_ok(t))
        fail("malformed-denominator", t.to_string() + " is not of the form 1 + f*(element)");
    return kernel_member(x * t - y * s);
}

bool ZariskOracle::power_invariance(std::uint64_t n,
                                    const std::vector<Polynomial>& sample) const {
    Polynomial fn = pair_.generator().pow(n);
    for (const auto& z : sample)
        if (kernel_member(z) != kernel_member_for(z, fn))
            return false;
    return true;
}

std::vector<Polynomial> ZariskOracle::default_sample() const {
    const AmbientPtr& amb = pair_.algebra().ambient();
    std::vector<Polynomial> out;
    out.push_back(Polynomial::constant(amb, 1));
    out.push_back(pair_.generator());
    for (std::size_t i = 0; i < amb->nvars(); ++i) {
        out.push_back(Polynomial::variable(amb, i));
        out.push_back(Polynomial::variable(amb, i) * pair_.generator());
        out.push_back(Polynomial::variable(amb, i) + Polynomial::constant(amb, 1));
    }
    for (const auto& r : pair_.algebra().relations().gens())
        out.push_back(r + Polynomial::constant(amb, 1));
    for (const auto& t : pair_.torsion().gens())
        out.push_back(t);
    return out;
}

// --- integral Zariskization comparison ------------------------------------------------

namespace {

// Ideal of source elements whose image lands in K (K must contain J_B).
IdealPresentation preimage_ideal(const AlgebraMap& f, const IdealPresentation& K) {
    PresentedAlgebra quotient(f.target().ambient(), K.gens());
    AlgebraMap into(f.source(), quotient, f.images());
    return into.kernel();
}

} // namespace

Polynomial random_element(const AmbientPtr& amb, Rng& rng, std::uint32_t max_degree,
                          int max_terms, long long coeff_bound) {
    Polynomial out(amb);
    int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        std::vector<std::uint32_t> exps(amb->nvars(), 0);
        std::uint32_t budget =
            max_degree == 0 ? 0 : static_cast<std::uint32_t>(rng.below(max_degree + 1));
        for (std::uint32_t d = 0; d < budget && !exps.empty(); ++d)
            ++exps[rng.below(exps.size())];
        long long c = rng.range(-coeff_bound, coeff_bound);
        out.add_term(Monomial(std::move(exps)), mpz_class(static_cast<long>(c)));
    }
    return out;
}

ConditionReport intzar_check(const PrincipalPair& p, const AlgebraMap& f,
                             const IntegralityCertificate& cert, std::size_t sample_size,
                             std::uint64_t seed,
                             const std::optional<Polynomial>& declared_target_gen) {
    ConditionReport report;
    std::string why;
    if (!validate_integrality(f, cert, &why))
        fail("precondition", "integrality certificate invalid: " + why);
    report.add("intzar.integral", -1, Verdict::Pass, "", "certified");

    const PresentedAlgebra& B = f.target();
    const IdealPresentation& JB = B.relations();
    const Polynomial& f0 = p.generator();
    Polynomial f0B = f.apply(f0);

    // Adic morphism: the declared ideal of definition on B must equal f0 B.
    Polynomial tgen = declared_target_gen.value_or(f0B);
    {
        IdealPresentation lhs = ideal_sum(IdealPresentation(B.ambient(), {tgen}), JB.gens());
        IdealPresentation rhs = ideal_sum(IdealPresentation(B.ambient(), {f0B}), JB.gens());
        if (!ideal_equal(lhs, rhs))
            fail("precondition", "declared target generator " + tgen.to_string() +
                                     " does not generate the extended ideal");
    }
    report.add("intzar.adic", -1, Verdict::Pass);

    const IdealPresentation& JA = p.algebra().relations();
    auto lhs_zero = [&](const Polynomial& w) {
        // Killed by a denominator from the source side: the annihilator of w
        // as a source module must meet 1 + f0 A.
        IdealPresentation annA = preimage_ideal(f, ideal_sum(colon(JB, w), JB.gens()));
        return is_unit_ideal(ideal_sum(ideal_sum(annA, {f0}), JA.gens()));
    };
    auto rhs_zero = [&](const Polynomial& w) {
        return normal_form(w, ideal_sum(JB, {f0B * w})).is_zero();
    };

    Rng rng(seed);
    std::size_t eq_fail = 0, surj_fail = 0;
    std::string eq_witness, surj_witness;
    // Unit coefficient bounds keep the Z-coefficient growth of the sampled
    // eliminations tame; variety comes from the monomials.
    auto draw = [&rng](const AmbientPtr& amb) { return random_element(amb, rng, 2, 2, 1); };
    for (std::size_t k = 0; k < sample_size; ++k) {
        Polynomial x = draw(B.ambient());
        Polynomial y = draw(B.ambient());
        Polynomial u = draw(p.algebra().ambient());
        Polynomial v = draw(p.algebra().ambient());
        Polynomial s = Polynomial::constant(p.algebra().ambient(), 1) + f0 * u;
        Polynomial t = Polynomial::constant(p.algebra().ambient(), 1) + f0 * v;
        Polynomial w = x * f.apply(t) - y * f.apply(s);
        if (lhs_zero(w) != rhs_zero(w)) {
            ++eq_fail;
            if (eq_witness.empty())
                eq_witness = w.to_string();
        }
        // Surjectivity: a target-side denominator is invertible already over
        // the source-side localization.
        Polynomial b = draw(B.ambient());
        Polynomial tau = Polynomial::constant(B.ambient(), 1) + f0B * b;
        IdealPresentation pre = preimage_ideal(f, ideal_sum(JB, {tau}));
        if (!is_unit_ideal(ideal_sum(ideal_sum(pre, {f0}), JA.gens()))) {
            ++surj_fail;
            if (surj_witness.empty())
                surj_witness = tau.to_string();
        }
    }
    report.add("intzar.equality", -1, eq_fail == 0 ? Verdict::Pass : Verdict::Fail, eq_witness,
               "sampled " + std::to_string(sample_size));
    report.add("intzar.surjective", -1, surj_fail == 0 ? Verdict::Pass : Verdict::Fail,
               surj_witness, "sampled " + std::to_string(sample_size));
    return report;
}

// --- gr as an algebra -------------------------------------------------------------------

PresentedAlgebra gr_algebra_presentation(const PrincipalPair& p, const std::string& cone_var) {
    if (!ideal_equal(p.colon_ladder(1), p.colon_ladder(2)))
        fail("not-applicable", "colon ladder does not stabilize at degree 1");

    const AmbientPtr& amb = p.algebra().ambient();
    std::vector<std::string> names = amb->vars();
    std::string cone = fresh_name(names, cone_var);
    names.push_back(cone);
    AmbientPtr ext = Ambient::make(amb->ring(), names);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < amb->nvars(); ++i)
        keep.push_back(i);
    Polynomial T = Polynomial::variable(ext, ext->nvars() - 1);

    std::vector<Polynomial> rels;
    for (const auto& r : p.algebra().relations().gens())
        rels.push_back(r.embed(ext, keep));
    for (const auto& c : p.colon_ladder(0).gens())
        rels.push_back(c.embed(ext, keep));
    for (const auto& c : p.colon_ladder(1).gens())
        rels.push_back(T * c.embed(ext, keep));
    return PresentedAlgebra(ext, std::move(rels));
}

} // namespace perftower
