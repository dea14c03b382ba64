#ifndef PERFTOWER_PAIRS_HPP
#define PERFTOWER_PAIRS_HPP

#include "perftower/algebra.hpp"
#include "perftower/report.hpp"
#include "perftower/rng.hpp"

#include <optional>

namespace perftower {

// A ring with a distinguished principal ideal (A, f). Torsion and the graded
// colon ladder are computed lazily and cached. The graded piece in degree n is
// the cyclic module A/C_n with C_n = ((J + (f^{n+1})) : f^n).
class PrincipalPair {
public:
    PrincipalPair() = default;
    PrincipalPair(PresentedAlgebra algebra, Polynomial generator);

    const PresentedAlgebra& algebra() const { return algebra_; }
    const Polynomial& generator() const { return f_; }

    const IdealPresentation& torsion() const;           // (J : f^inf)
    bool small_torsion() const;                         // f * T subset of J
    IdealPresentation bounded_torsion(std::uint64_t n) const; // (J : f^n)
    const IdealPresentation& colon_ladder(std::uint64_t n) const; // C_n

    // Generators of the torsion submodule of A: the reduced basis of the
    // saturation with zero classes dropped (the saturation always contains J).
    std::vector<Polynomial> torsion_generators() const;

    // A/I presented as (ambient, J + (f)).
    PresentedAlgebra quotient_mod_generator() const;

    std::string to_string() const;

    PrincipalPair(const PrincipalPair& o);
    PrincipalPair& operator=(const PrincipalPair& o);

private:
    PresentedAlgebra algebra_;
    Polynomial f_;

    mutable std::mutex mu_;
    mutable std::optional<IdealPresentation> torsion_;
    mutable std::optional<bool> small_torsion_;
    // Node-based: references returned by colon_ladder stay valid while the
    // pair lives.
    mutable std::map<std::uint64_t, IdealPresentation> ladder_;
};

// --- torsion and graded pieces ------------------------------------------------

struct TorsionAnalysis {
    IdealPresentation torsion;
    bool small_torsion = false;
    std::vector<IdealPresentation> bounded; // (J : f^n) for n = 1..depth
};
TorsionAnalysis torsion_analysis(const PrincipalPair& p, std::uint64_t ladder_depth = 4);

struct GradedPiece {
    std::uint64_t degree = 0;
    IdealPresentation presenting; // C_n
    Polynomial generator_power;   // f^n, the cyclic generator's representative
};
GradedPiece gr_piece(const PrincipalPair& p, std::uint64_t n);

// Multiplication ladder checks in degree n (n >= 1): iso of gr^n -> gr^{n+1}
// versus the torsion-escalation condition; the two always agree.
struct GrnCheck {
    bool iso = false;
    bool cond3 = false;
    bool agree = false;
};
GrnCheck grn_lemma_check(const PrincipalPair& p, std::uint64_t n);

// Exactness of the canonical torsion sequences. ex2 is evaluated only when
// small torsion holds; otherwise NotApplicable.
struct ExactnessCheck {
    Verdict ex1 = Verdict::NotApplicable;
    Verdict ex2 = Verdict::NotApplicable;
};
ExactnessCheck exactness_check(const PrincipalPair& p);

// --- torsion maps and graded families ------------------------------------------

// Map of torsion parts riding on a degree-0 base map: the square through the
// torsion-to-quotient maps commutes on every source torsion generator.
struct TorsionMap {
    PrincipalPair source;
    PrincipalPair target;
    AlgebraMap base; // quotient presentations A/I -> B/J (same ambients as A, B)
    std::vector<Polynomial> source_generators; // source.torsion_generators()
    std::vector<Polynomial> images;            // aligned with source_generators
    bool bijective_reported = false;
};

// Zero torsion map (both torsion parts must be checked zero by the caller) or
// explicit generator assignment.
TorsionMap make_torsion_map(const PrincipalPair& src, const PrincipalPair& tgt,
                            const AlgebraMap& base, std::vector<Polynomial> images);

struct GradedMapFamily {
    PrincipalPair source;
    PrincipalPair target;
    AlgebraMap degree0; // A/C0 -> B/C0 presentation-level map
    std::uint64_t n_max = 4;
    bool injective_reported = false; // preimage of C_n^B equals C_n^A for n <= n_max
    bool iso_reported = false;       // degree0 bijective and preimage equality
};

// Lemma-style extension: from a degree-0 map and a commuting torsion map to
// the graded family, verifying well-definedness degreewise up to n_max.
// Throws diagram-violation when the torsion square fails.
GradedMapFamily extend_to_graded(const AlgebraMap& degree0, const TorsionMap& torsion,
                                 std::uint64_t n_max = 4);

// Inverse direction: from a graded family with the anchor f -> g to the
// torsion map, by splitting lifts along the exact sequence. Throws
// anchor-violation / exactness-violation.
TorsionMap restrict_to_torsion(const GradedMapFamily& family);

// --- Zariskization oracle --------------------------------------------------------

// Equality/kernel oracle for (1 + fA)^{-1} A, exact through the criterion
// z = 0 there iff z in (f z) + J.
class ZariskOracle {
public:
    explicit ZariskOracle(PrincipalPair pair) : pair_(std::move(pair)) {}

    // Jacobson-scope semantics: finitely presented algebras over Z and Z/m are
    // Jacobson rings, so Zariskian == f nilpotent modulo J.
    bool is_zariskian() const;
    bool kernel_member(const Polynomial& z) const;
    // x/s == y/t with s, t in 1 + f A; throws malformed-denominator otherwise.
    bool fractions_equal(const Polynomial& x, const Polynomial& s, const Polynomial& y,
                         const Polynomial& t) const;
    // Kernel criterion is invariant under f -> f^n on the sample.
    bool power_invariance(std::uint64_t n, const std::vector<Polynomial>& sample) const;

    std::vector<Polynomial> default_sample() const;

private:
    bool kernel_member_for(const Polynomial& z, const Polynomial& f) const;
    PrincipalPair pair_;
};

// --- integral base change comparison (appendix) -----------------------------------

// Checks that Zariskization commutes with an integral adic extension: equality
// of fractions agrees under both kernel oracles and sampled denominators are
// invertible on the tensor side. Seed-pinned sampling.
ConditionReport intzar_check(const PrincipalPair& p, const AlgebraMap& f,
                             const IntegralityCertificate& cert, std::size_t sample_size,
                             std::uint64_t seed,
                             const std::optional<Polynomial>& declared_target_gen = std::nullopt);

// --- gr as a presented algebra ------------------------------------------------------

// Presents gr(A, f) as an algebra: ambient vars + one cone variable, relations
// J + C0 + cone * C1. Requires the ladder to stabilize at degree 1 (automatic
// under small torsion); throws not-applicable otherwise.
PresentedAlgebra gr_algebra_presentation(const PrincipalPair& p, const std::string& cone_var = "T");

// Deterministic small random element of an ambient (for seed-pinned suites).
Polynomial random_element(const AmbientPtr& amb, Rng& rng, std::uint32_t max_degree = 2,
                          int max_terms = 2, long long coeff_bound = 3);

} // namespace perftower

#endif
