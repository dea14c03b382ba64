#include "perftower/algebra.hpp"

#include "perftower/error.hpp"
#include "perftower/parse.hpp"

#include <algorithm>

namespace perftower {

PresentedAlgebra::PresentedAlgebra(AmbientPtr ambient, std::vector<Polynomial> relations)
    : ambient_(std::move(ambient)), relations_(ambient_, std::move(relations)) {
    is_zero_ = is_unit_ideal(relations_);
}

std::string PresentedAlgebra::to_string() const {
    return ambient_->to_string() + "/" + relations_.to_string();
}

PresentedAlgebra present_algebra(const CoefficientRing& ring,
                                 const std::vector<std::string>& vars,
                                 const std::vector<std::string>& relation_texts) {
    AmbientPtr amb = Ambient::make(ring, vars);
    std::vector<Polynomial> rels;
    for (const auto& t : relation_texts)
        rels.push_back(parse_polynomial(t, amb));
    return PresentedAlgebra(amb, std::move(rels));
}

// --- AlgebraMap --------------------------------------------------------------

struct AlgebraMap::Graph {
    AmbientPtr ext;        // [target vars..., renamed source vars...] over the target ring
    std::size_t ntgt = 0;
    std::vector<std::size_t> tgt_map; // target var i -> i
    std::vector<std::size_t> src_map; // source var i -> ntgt + i
    IdealPresentation graph_ideal;    // J_tgt + (src_i - image_i)
    MonomialOrder order = MonomialOrder::grevlex();
};

AlgebraMap::AlgebraMap(PresentedAlgebra source, PresentedAlgebra target,
                       std::vector<Polynomial> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != src_.ambient()->nvars())
        fail("ill-defined-map", "image count differs from source variable count");
    for (const auto& im : images_)
        if (!same_ambient(im.ambient(), tgt_.ambient()))
            fail("ambient-mismatch", "image outside the target ambient");
    for (const auto& r : src_.relations().gens()) {
        Polynomial v = tgt_.nf(r.substitute(tgt_.ambient(), images_));
        if (!v.is_zero())
            fail("ill-defined-map", "relation " + r.to_string() +
                                        " maps to nonzero element " + v.to_string());
    }
    verified_ = true;
}

AlgebraMap AlgebraMap::identity(const PresentedAlgebra& a) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < a.ambient()->nvars(); ++i)
        images.push_back(a.var(i));
    return AlgebraMap(a, a, std::move(images));
}

AlgebraMap::AlgebraMap(const AlgebraMap& o)
    : src_(o.src_), tgt_(o.tgt_), images_(o.images_), verified_(o.verified_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    graph_ = o.graph_;
}

AlgebraMap& AlgebraMap::operator=(const AlgebraMap& o) {
    if (this == &o)
        return *this;
    std::lock_guard<std::mutex> lock(o.mu_);
    src_ = o.src_;
    tgt_ = o.tgt_;
    images_ = o.images_;
    verified_ = o.verified_;
    graph_ = o.graph_;
    return *this;
}

AlgebraMap::AlgebraMap(AlgebraMap&& o) noexcept
    : src_(std::move(o.src_)), tgt_(std::move(o.tgt_)), images_(std::move(o.images_)),
      verified_(o.verified_), graph_(std::move(o.graph_)) {}

AlgebraMap& AlgebraMap::operator=(AlgebraMap&& o) noexcept {
    src_ = std::move(o.src_);
    tgt_ = std::move(o.tgt_);
    images_ = std::move(o.images_);
    verified_ = o.verified_;
    graph_ = std::move(o.graph_);
    return *this;
}

AlgebraMap::~AlgebraMap() = default;

Polynomial AlgebraMap::apply_raw(const Polynomial& p) const {
    if (!same_ambient(p.ambient(), src_.ambient()))
        fail("ambient-mismatch", "map applied outside its source");
    return p.substitute(tgt_.ambient(), images_);
}

Polynomial AlgebraMap::apply(const Polynomial& p) const { return tgt_.nf(apply_raw(p)); }

AlgebraMap AlgebraMap::then(const AlgebraMap& g) const {
    if (!same_ambient(tgt_.ambient(), g.source().ambient()))
        fail("ambient-mismatch", "composition target/source mismatch");
    std::vector<Polynomial> images;
    for (const auto& im : images_)
        images.push_back(g.apply(im));
    return AlgebraMap(src_, g.target(), std::move(images));
}

std::shared_ptr<const AlgebraMap::Graph> AlgebraMap::graph() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (graph_)
            return graph_;
    }
    auto gr = std::make_shared<Graph>();
    const auto& tvars = tgt_.ambient()->vars();
    const auto& svars = src_.ambient()->vars();
    gr->ntgt = tvars.size();

    std::vector<std::string> names = tvars;
    for (const auto& sv : svars)
        names.push_back(fresh_name(names, sv));
    gr->ext = Ambient::make(tgt_.ambient()->ring(), names);
    for (std::size_t i = 0; i < tvars.size(); ++i)
        gr->tgt_map.push_back(i);
    for (std::size_t i = 0; i < svars.size(); ++i)
        gr->src_map.push_back(gr->ntgt + i);

    std::vector<Polynomial> gens;
    for (const auto& r : tgt_.relations().gens())
        gens.push_back(r.embed(gr->ext, gr->tgt_map));
    for (std::size_t i = 0; i < svars.size(); ++i) {
        Polynomial diff = Polynomial::variable(gr->ext, gr->src_map[i]) -
                          images_[i].embed(gr->ext, gr->tgt_map);
        gens.push_back(std::move(diff));
    }
    gr->graph_ideal = IdealPresentation(gr->ext, gens);
    gr->order = MonomialOrder::block(gr->ntgt, MonomialOrder::grevlex());

    std::lock_guard<std::mutex> lock(mu_);
    if (!graph_)
        graph_ = gr;
    return graph_;
}

namespace {

// Rebuild a polynomial of the graph's source block in the source ambient,
// restricting coefficients through the canonical lift. Valid whenever the
// source ring surjects onto the target ring (Z -> Z/m, Z/m -> Z/m' | m).
Polynomial restrict_to_source(const Polynomial& p, std::size_t ntgt,
                              const AmbientPtr& src_amb) {
    Polynomial out(src_amb);
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::uint32_t> exps(m.exps().begin() + static_cast<long>(ntgt),
                                        m.exps().end());
        for (std::size_t i = 0; i < ntgt; ++i)
            if (m.exp(i) != 0)
                fail("internal", "restriction of a polynomial with target variables");
        out.add_term(Monomial(std::move(exps)), c);
    }
    return out;
}

} // namespace

IdealPresentation AlgebraMap::kernel() const {
    auto gr = graph();
    IdealPresentation elim = eliminate(gr->graph_ideal, gr->ntgt);

    const AmbientPtr& samb = src_.ambient();
    std::vector<Polynomial> gens;
    for (const auto& g : elim.gens()) {
        // elim lives in the renamed source block over the target ring.
        Polynomial p(samb);
        for (const auto& [m, c] : g.terms())
            p.add_term(m, c);
        if (!p.is_zero())
            gens.push_back(std::move(p));
    }
    // The characteristic of the target contributes to the kernel when the
    // source ring is bigger.
    const auto& sring = samb->ring();
    const auto& tring = tgt_.ambient()->ring();
    if (!tring.is_integers() && (sring.is_integers() || sring.modulus() != tring.modulus())) {
        Polynomial c = Polynomial::constant(samb, tring.modulus());
        if (!c.is_zero())
            gens.push_back(std::move(c));
    }
    for (const auto& r : src_.relations().gens())
        gens.push_back(r);
    IdealPresentation result(samb, gens);
    return IdealPresentation(samb, result.basis_in_ring());
}

std::optional<Polynomial> AlgebraMap::image_member(const Polynomial& b) const {
    if (!same_ambient(b.ambient(), tgt_.ambient()))
        fail("ambient-mismatch", "image query outside the target ambient");
    auto gr = graph();
    Polynomial nf = normal_form(b.embed(gr->ext, gr->tgt_map), gr->graph_ideal, gr->order);
    for (const auto& [m, c] : nf.terms())
        for (std::size_t i = 0; i < gr->ntgt; ++i)
            if (m.exp(i) != 0)
                return std::nullopt;
    Polynomial witness = restrict_to_source(nf, gr->ntgt, src_.ambient());
    return src_.nf(witness);
}

Polynomial AlgebraMap::preimage(const Polynomial& b) const {
    auto w = image_member(b);
    if (!w)
        fail("no-preimage", b.to_string() + " is not in the image");
    return *w;
}

bool AlgebraMap::is_injective() const {
    return ideal_contains(src_.relations(), kernel());
}

bool AlgebraMap::is_surjective() const {
    for (std::size_t i = 0; i < tgt_.ambient()->nvars(); ++i)
        if (!image_member(tgt_.var(i)))
            return false;
    return true;
}

// --- units, annihilators -------------------------------------------------------

bool is_unit(const PresentedAlgebra& a, const Polynomial& z) {
    return is_unit_ideal(ideal_sum(a.relations(), {z}));
}

IdealPresentation annihilator(const PresentedAlgebra& a, const Polynomial& z) {
    return colon(a.relations(), z);
}

// --- pushouts --------------------------------------------------------------------

Pushout tensor_pushout(const AlgebraMap& f, const AlgebraMap& g) {
    if (!same_ambient(f.source().ambient(), g.source().ambient()))
        fail("ambient-mismatch", "pushout legs have different sources");

    const PresentedAlgebra& A = f.target();
    const PresentedAlgebra& S = g.target();
    CoefficientRing pring = coeff_tensor(A.ambient()->ring(), S.ambient()->ring());
    if (!coeff_map_exists(A.ambient()->ring(), pring) ||
        !coeff_map_exists(S.ambient()->ring(), pring))
        fail("invalid-ring", "pushout coefficient ring is not a common quotient");

    std::vector<std::string> names = A.ambient()->vars();
    std::vector<std::size_t> left_map, right_map;
    for (std::size_t i = 0; i < names.size(); ++i)
        left_map.push_back(i);
    for (const auto& sv : S.ambient()->vars()) {
        std::string nm = fresh_name(names, sv);
        names.push_back(nm);
        right_map.push_back(names.size() - 1);
    }
    AmbientPtr ext = Ambient::make(pring, names);

    std::vector<Polynomial> rels;
    for (const auto& r : A.relations().gens())
        rels.push_back(r.embed(ext, left_map));
    for (const auto& r : S.relations().gens())
        rels.push_back(r.embed(ext, right_map));
    for (std::size_t i = 0; i < f.source().ambient()->nvars(); ++i)
        rels.push_back(f.images()[i].embed(ext, left_map) -
                       g.images()[i].embed(ext, right_map));
    PresentedAlgebra P(ext, std::move(rels));

    std::vector<Polynomial> left_images, right_images;
    for (std::size_t i = 0; i < A.ambient()->nvars(); ++i)
        left_images.push_back(Polynomial::variable(ext, left_map[i]));
    for (std::size_t i = 0; i < S.ambient()->nvars(); ++i)
        right_images.push_back(Polynomial::variable(ext, right_map[i]));

    Pushout out{P, AlgebraMap(A, P, std::move(left_images)),
                AlgebraMap(S, P, std::move(right_images))};
    return out;
}

// --- characteristic p tools -------------------------------------------------------

bool has_char_p(const PresentedAlgebra& a) {
    return a.ambient()->ring().is_field();
}

AlgebraMap frobenius_endo(const PresentedAlgebra& a) {
    if (!has_char_p(a))
        fail("not-applicable", "Frobenius needs characteristic p coefficients");
    mpz_class p = a.ambient()->ring().modulus();
    if (!p.fits_ulong_p())
        fail("invalid-ring", "characteristic too large");
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < a.ambient()->nvars(); ++i)
        images.push_back(a.var(i).pow(p.get_ui()));
    return AlgebraMap(a, a, std::move(images));
}

IdealPresentation frobenius_kernel(const PresentedAlgebra& a) {
    return frobenius_endo(a).kernel();
}

bool is_reduced(const PresentedAlgebra& a) {
    if (a.is_zero_ring())
        fail("not-applicable", "zero ring");
    return ideal_contains(a.relations(), frobenius_kernel(a));
}

RelativeFrobenius relative_frobenius(const AlgebraMap& f) {
    const PresentedAlgebra& A = f.source();
    const PresentedAlgebra& B = f.target();
    if (!has_char_p(A) || !has_char_p(B))
        fail("not-applicable", "relative Frobenius needs characteristic p");
    mpz_class p = A.ambient()->ring().modulus();

    RelativeFrobenius out{tensor_pushout(f, frobenius_endo(A)), AlgebraMap(), false, false,
                          false};
    const PresentedAlgebra& P = out.twist.algebra;

    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < B.ambient()->nvars(); ++i)
        images.push_back(B.var(i).pow(p.get_ui()));
    for (std::size_t i = 0; i < A.ambient()->nvars(); ++i)
        images.push_back(f.images()[i]);
    out.map = AlgebraMap(P, B, std::move(images));
    out.injective = out.map.is_injective();
    out.surjective = out.map.is_surjective();
    out.isomorphism = out.injective && out.surjective;
    return out;
}

// --- weak etaleness certificates ------------------------------------------------

EtaleTarget build_etale_target(const PresentedAlgebra& a, const EtaleCertificate& cert) {
    const AmbientPtr& amb = a.ambient();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < amb->nvars(); ++i)
        keep.push_back(i);

    if (cert.kind == EtaleCertificate::Kind::Zariskization)
        fail("precondition", "a zariskization certificate does not build a presentation");

    if (cert.kind == EtaleCertificate::Kind::Localization) {
        Polynomial g = parse_polynomial(cert.g_text, amb);
        std::vector<std::string> names = amb->vars();
        std::string s = fresh_name(names, cert.svar);
        names.push_back(s);
        AmbientPtr ext = Ambient::make(amb->ring(), names);
        std::vector<Polynomial> rels;
        for (const auto& r : a.relations().gens())
            rels.push_back(r.embed(ext, keep));
        rels.push_back(g.embed(ext, keep) * Polynomial::variable(ext, ext->nvars() - 1) -
                       Polynomial::constant(ext, 1));
        PresentedAlgebra S(ext, std::move(rels));
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < amb->nvars(); ++i)
            images.push_back(Polynomial::variable(ext, i));
        return EtaleTarget{S, AlgebraMap(a, S, std::move(images))};
    }

    // Standard etale: (A[z]/(h))[1/g]; h monic in z, h' a unit (checked later).
    std::vector<std::string> hnames = amb->vars();
    std::string z = fresh_name(hnames, cert.zvar);
    hnames.push_back(z);
    AmbientPtr hamb = Ambient::make(amb->ring(), hnames);
    Polynomial h = parse_polynomial(cert.h_text, hamb);
    Polynomial g = cert.g_text.empty() ? Polynomial::constant(hamb, 1)
                                       : parse_polynomial(cert.g_text, hamb);

    std::vector<std::string> names = hnames;
    std::string s = fresh_name(names, cert.svar);
    names.push_back(s);
    AmbientPtr ext = Ambient::make(amb->ring(), names);
    std::vector<std::size_t> hmap;
    for (std::size_t i = 0; i < hamb->nvars(); ++i)
        hmap.push_back(i);

    std::vector<Polynomial> rels;
    for (const auto& r : a.relations().gens())
        rels.push_back(r.embed(ext, keep));
    rels.push_back(h.embed(ext, hmap));
    rels.push_back(g.embed(ext, hmap) * Polynomial::variable(ext, ext->nvars() - 1) -
                   Polynomial::constant(ext, 1));
    PresentedAlgebra S(ext, std::move(rels));
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < amb->nvars(); ++i)
        images.push_back(Polynomial::variable(ext, i));
    return EtaleTarget{S, AlgebraMap(a, S, std::move(images))};
}

namespace {

bool monic_in(const Polynomial& h, std::size_t zidx, std::string* why) {
    std::uint32_t d = 0;
    for (const auto& [m, c] : h.terms())
        d = std::max(d, m.exp(zidx));
    if (d == 0) {
        if (why)
            *why = "certificate polynomial does not involve its variable";
        return false;
    }
    for (const auto& [m, c] : h.terms()) {
        if (m.exp(zidx) != d)
            continue;
        bool pure = m.total_degree() == d;
        if (!pure || c != 1) {
            if (why)
                *why = "certificate polynomial is not monic";
            return false;
        }
    }
    return true;
}

} // namespace

bool etale_check(const EtaleCertificate& cert, const AlgebraMap& f, std::string* why) {
    const PresentedAlgebra& A = f.source();
    const PresentedAlgebra& S = f.target();
    switch (cert.kind) {
    case EtaleCertificate::Kind::Zariskization:
        return true;
    case EtaleCertificate::Kind::Localization: {
        Polynomial g = parse_polynomial(cert.g_text, A.ambient());
        if (!is_unit(S, f.apply(g))) {
            if (why)
                *why = "localized element is not a unit in the target";
            return false;
        }
        return true;
    }
    case EtaleCertificate::Kind::StandardEtale: {
        std::vector<std::string> hnames = A.ambient()->vars();
        std::string z = fresh_name(hnames, cert.zvar);
        hnames.push_back(z);
        AmbientPtr hamb = Ambient::make(A.ambient()->ring(), hnames);
        Polynomial h = parse_polynomial(cert.h_text, hamb);
        if (!monic_in(h, hamb->nvars() - 1, why))
            return false;
        auto zidx = S.ambient()->var_index(z);
        if (!zidx) {
            if (why)
                *why = "target has no variable named " + z;
            return false;
        }
        std::vector<Polynomial> images = f.images();
        images.push_back(S.var(*zidx));
        Polynomial hval = h.substitute(S.ambient(), images);
        if (!S.element_is_zero(hval)) {
            if (why)
                *why = "certificate polynomial does not vanish on its generator";
            return false;
        }
        Polynomial hprime = h.derivative(hamb->nvars() - 1).substitute(S.ambient(), images);
        if (!is_unit(S, hprime)) {
            if (why)
                *why = "derivative is not a unit in the target";
            return false;
        }
        return true;
    }
    }
    return false;
}

// --- integrality certificates ------------------------------------------------------

bool validate_integrality(const AlgebraMap& f, const IntegralityCertificate& cert,
                          std::string* why) {
    const PresentedAlgebra& A = f.source();
    const PresentedAlgebra& B = f.target();
    if (cert.monic_texts.size() != B.ambient()->nvars())
        fail("precondition", "integrality certificate arity mismatch");

    std::vector<std::string> names = A.ambient()->vars();
    std::string w = fresh_name(names, cert.wvar);
    names.push_back(w);
    AmbientPtr wamb = Ambient::make(A.ambient()->ring(), names);

    for (std::size_t j = 0; j < cert.monic_texts.size(); ++j) {
        Polynomial p = parse_polynomial(cert.monic_texts[j], wamb);
        if (!monic_in(p, wamb->nvars() - 1, why))
            return false;
        std::vector<Polynomial> images = f.images();
        images.push_back(B.var(j));
        if (!B.element_is_zero(p.substitute(B.ambient(), images))) {
            if (why)
                *why = "certificate for generator " + B.ambient()->vars()[j] +
                       " does not vanish";
            return false;
        }
    }
    return true;
}

// --- dimension -------------------------------------------------------------------

int krull_dim(const PresentedAlgebra& a) {
    if (!a.ambient()->ring().is_field())
        fail("not-applicable", "GB dimension needs prime field coefficients");
    if (a.is_zero_ring())
        fail("not-applicable", "zero ring has no dimension");

    auto ord = MonomialOrder::grevlex();
    std::vector<Monomial> lts;
    for (const auto& g : a.relations().basis_in_ring(ord))
        lts.push_back(g.leading_term(ord).first);

    std::size_t n = a.ambient()->nvars();
    if (n > 20)
        fail("internal", "dimension search limited to 20 variables");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        for (const auto& m : lts) {
            bool support_inside = true;
            for (std::size_t i = 0; i < n; ++i)
                if (m.exp(i) > 0 && !(mask & (1u << i))) {
                    support_inside = false;
                    break;
                }
            if (support_inside) {
                independent = false;
                break;
            }
        }
        if (independent)
            best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

PresentedAlgebra change_coefficients(const PresentedAlgebra& a, const CoefficientRing& ring) {
    AmbientPtr ext = Ambient::make(ring, a.ambient()->vars());
    std::vector<Polynomial> rels;
    for (const auto& r : a.relations().gens()) {
        Polynomial q = r.change_ring(ext);
        if (!q.is_zero())
            rels.push_back(std::move(q));
    }
    return PresentedAlgebra(ext, std::move(rels));
}

} // namespace perftower
