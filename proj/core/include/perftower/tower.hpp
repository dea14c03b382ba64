#ifndef PERFTOWER_TOWER_HPP
#define PERFTOWER_TOWER_HPP

#include "perftower/pairs.hpp"

#include <optional>

namespace perftower {

// How the Zariskian condition (e) is to be read for a tower: decided by the
// nilpotence oracle, asserted by the user (models of complete local rings),
// or certified through integral Zariskization.
enum class ZariskianSemantics { Computed, Declared, AfterZariskization };

std::string zariskian_semantics_name(ZariskianSemantics s);

// A finite truncation R_0 -> R_1 -> ... -> R_N with distinguished generators
// f0 of I0 (level 0) and optionally f1 of I1 (level 1). Everything a checker
// needs (generator images, char-p quotient presentations, reduced transition
// maps) is derived once and cached.
class Tower {
public:
    Tower(std::vector<PresentedAlgebra> levels, std::vector<AlgebraMap> transitions,
          Polynomial f0, std::optional<Polynomial> f1, mpz_class p,
          ZariskianSemantics semantics);

    std::size_t level_count() const { return levels_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }
    const PresentedAlgebra& level(std::size_t i) const { return levels_.at(i); }
    const AlgebraMap& transition(std::size_t i) const { return transitions_.at(i); }
    const Polynomial& f0() const { return f0_; }
    const std::optional<Polynomial>& f1() const { return f1_; }
    const mpz_class& p() const { return p_; }
    ZariskianSemantics semantics() const { return semantics_; }

    // Image of f0 (resp. f1) in R_i, normalized. f1_at requires i >= 1.
    const Polynomial& f0_at(std::size_t i) const { return f0_imgs_.at(i); }
    const Polynomial& f1_at(std::size_t i) const;
    bool has_f1() const { return f1_.has_value(); }

    // Condition (a) at the base: p in (f0) + J_0. The char-p quotient
    // presentations below are only meaningful when this holds.
    bool base_condition() const { return base_condition_; }

    // R_i / I0 R_i presented over F_p (valid under the base condition).
    const PresentedAlgebra& quotient(std::size_t i) const { return quotients_.at(i); }
    // R_{i+1} / I1 R_{i+1} over F_p; requires f1 and i >= 0 (level i+1).
    PresentedAlgebra quotient_mod_f1(std::size_t level) const;
    // Reduced transition Q_i -> Q_{i+1}.
    const AlgebraMap& reduced_transition(std::size_t i) const { return reduced_.at(i); }

    // Long-lived pair objects; their torsion/ladder caches are shared by all
    // checks on this tower.
    const PrincipalPair& pair_f0(std::size_t i) const; // (R_i, f0_at(i))
    const PrincipalPair& pair_f1(std::size_t i) const; // (R_i, f1_at(i)), i >= 1

    Tower with_semantics(ZariskianSemantics s) const;

private:
    std::vector<PresentedAlgebra> levels_;
    std::vector<AlgebraMap> transitions_;
    Polynomial f0_;
    std::optional<Polynomial> f1_;
    mpz_class p_;
    ZariskianSemantics semantics_;

    bool base_condition_ = false;
    std::vector<Polynomial> f0_imgs_;
    std::vector<Polynomial> f1_imgs_; // index shifted: f1_imgs_[i] is at level i (i >= 1)
    std::vector<PresentedAlgebra> quotients_;
    std::vector<AlgebraMap> reduced_;
    std::shared_ptr<std::vector<PrincipalPair>> pairs_f0_;
    std::shared_ptr<std::vector<PrincipalPair>> pairs_f1_; // index i-1 holds level i
};

// The i-th Frobenius projection F_i : Q_{i+1} -> Q_i, with verification data.
struct FrobeniusProjection {
    std::size_t level = 0;
    AlgebraMap map;
    bool identity_verified = false;    // reduced_transition o F == p-th power map
    bool semilinear_verified = false;  // F(t(r) x) == r^p F(x) on a sample
};

// Throws no-preimage (naming the generator) when condition (c) fails at i,
// ill-defined-map when (b) fails badly enough to poison the choice.
FrobeniusProjection frobenius_projection(const Tower& t, std::size_t i);

// Conditions (a)-(f) plus the degree-1 anchor. Rows: a, b[i], c[i], d[i],
// e[i], f1, f2[i], star[i]. Failures carry witnesses; rows whose
// prerequisites failed are NotApplicable.
ConditionReport check_axioms(const Tower& t);

// Condition (g): small torsion per level plus the torsion bijection per
// transition. Rows: g.small_torsion[i], g.decompose[i], g.injective[i],
// g.surjective[i]; transition rows need (a)-(d),(f).
ConditionReport check_g(const Tower& t);

// Condition (g'): graded comparison. Rows: gp.small_torsion[i], gp.phi0[i],
// gp.deg1[i], gp.stab[i].
ConditionReport check_g_prime(const Tower& t, std::uint64_t n_max = 4);

// Runs all checks and asserts verdict(g) == verdict(g') on every transition
// whose preconditions (d)-(f) hold ((e) per the tower's semantics, or the
// degree-1 anchor). Disagreements are flagged as thmA.violation.
ConditionReport theorem_a_report(const Tower& t, std::uint64_t n_max = 4);

// Graded injectivity of the transitions and of the Frobenius comparison,
// reducedness and dimension tables. Rows: grt.inj[i], phip.inj[i],
// reduced[i], dim.level[i], dim.fiber[i], dim.gr[i], dim.levels_equal,
// dim.gr_equal, dim.gr_vs_level.
ConditionReport structural_props(const Tower& t, std::uint64_t n_max = 4);

// --- tilts -------------------------------------------------------------------

// Depth-m compatible sequence (a_0,...,a_m), a_j in Q_{i+j}, F(a_{j+1}) = a_j.
struct TiltElement {
    std::size_t base_level = 0;
    std::vector<Polynomial> components;
};

// Componentwise ring interface for the depth-m truncated small tilt at level
// i; every claim it checks is "verified to depth m".
class SmallTilt {
public:
    SmallTilt(const Tower& t, std::size_t level, std::size_t depth);

    std::size_t depth() const { return depth_; }
    std::size_t base_level() const { return level_; }

    TiltElement zero() const;
    TiltElement one() const;
    // Compatibility of the given components is verified; throws precondition.
    TiltElement make(std::vector<Polynomial> components) const;

    TiltElement add(const TiltElement& a, const TiltElement& b) const;
    TiltElement mul(const TiltElement& a, const TiltElement& b) const;
    TiltElement neg(const TiltElement& a) const;
    bool equal(const TiltElement& a, const TiltElement& b) const;
    bool is_zero(const TiltElement& a) const;

    // Deterministic compatible lift of a 0-th component along Frobenius
    // preimages; exists under (d). Throws no-preimage naming the depth.
    TiltElement lift_tower(const Polynomial& a0) const;

    // Compatible element determined by a top component via downward
    // Frobenius-projection images (every depth-m element arises this way).
    TiltElement from_top(const Polynomial& top) const;

    // Generator of the kernel of the 0-th projection, built from f1's images;
    // requires f1.
    TiltElement f_flat() const;

    // Verifies that the 0-th projection identifies tilt/(f_flat) with
    // R_i/I0 R_i to this depth: surjectivity on generators and the kernel test
    // on a deterministic sample. Rows: tilt.surjective, tilt.kernel.
    ConditionReport residue_report() const;

    const Tower& tower() const { return tower_; }
    const FrobeniusProjection& projection(std::size_t j) const { return projections_.at(j); }

    // Membership of a tilt element in the principal ideal (g), to depth m:
    // witness w with z == g * w componentwise when it exists.
    std::optional<TiltElement> principal_member(const TiltElement& z,
                                                const TiltElement& g) const;

private:
    Polynomial frob_preimage(std::size_t level_abs, const Polynomial& value) const;

    Tower tower_;
    std::size_t level_;
    std::size_t depth_;
    std::vector<FrobeniusProjection> projections_; // F_{i+j}, j = 0..depth-1
};

// Degree-0 and degree-1 comparison between the truncated tilt and the base of
// the tower (graded invariance under tilting, checked to depth m). Rows:
// tilt.surjective, tilt.kernel, tiltgr.stab, tiltgr.deg1.
ConditionReport tilt_gr_comparison(const Tower& t, std::size_t level, std::size_t depth,
                                   std::uint64_t n_max = 4);

// --- base change and Zariskization ------------------------------------------------

struct BaseChangeResult {
    Tower tower;
    ConditionReport report;
};
// Levelwise pushout along a certified weakly etale map g : R_0 -> S. Re-runs
// the preperfectoid checks on the result (asserted to pass), verifies the
// graded extension ideals levelwise, and in char p the relative Frobenius of
// the graded map. Throws precondition on an invalid certificate.
BaseChangeResult base_change(const Tower& t, const AlgebraMap& g,
                             const EtaleCertificate& cert, std::uint64_t n_max = 4);

struct ZariskizeResult {
    Tower tower; // same presentations, semantics = AfterZariskization
    ConditionReport report;
};
// Requires one integrality certificate per transition; corroborates with
// seed-pinned intzar sampling per level.
ZariskizeResult zariskize_tower(const Tower& t,
                                const std::vector<IntegralityCertificate>& certs,
                                std::size_t sample_size = 10, std::uint64_t seed = 1);

} // namespace perftower

#endif
