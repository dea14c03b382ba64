#ifndef PERFTOWER_ALGEBRA_HPP
#define PERFTOWER_ALGEBRA_HPP

#include "perftower/ideal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perftower {

// Finitely presented algebra A = C[x1..xk]/J. Element equality is decidable
// through normal forms; the zero algebra (1 in J) is permitted but flagged.
class PresentedAlgebra {
public:
    PresentedAlgebra() = default;
    PresentedAlgebra(AmbientPtr ambient, std::vector<Polynomial> relations);

    const AmbientPtr& ambient() const { return ambient_; }
    const IdealPresentation& relations() const { return relations_; }
    bool is_zero_ring() const { return is_zero_; }

    Polynomial nf(const Polynomial& p) const { return normal_form(p, relations_); }
    bool elements_equal(const Polynomial& a, const Polynomial& b) const {
        return nf(a - b).is_zero();
    }
    bool element_is_zero(const Polynomial& a) const { return nf(a).is_zero(); }

    Polynomial var(std::size_t i) const { return Polynomial::variable(ambient_, i); }
    Polynomial constant(const mpz_class& c) const { return Polynomial::constant(ambient_, c); }

    std::string to_string() const;

private:
    AmbientPtr ambient_;
    IdealPresentation relations_;
    bool is_zero_ = false;
};

PresentedAlgebra present_algebra(const CoefficientRing& ring,
                                 const std::vector<std::string>& vars,
                                 const std::vector<std::string>& relation_texts);

// Ring homomorphism determined by variable images; well-definedness (every
// source relation maps to zero) is verified at construction.
class AlgebraMap {
public:
    AlgebraMap() = default;
    // Throws ill-defined-map naming the offending relation.
    AlgebraMap(PresentedAlgebra source, PresentedAlgebra target,
               std::vector<Polynomial> images);

    static AlgebraMap identity(const PresentedAlgebra& a);

    const PresentedAlgebra& source() const { return src_; }
    const PresentedAlgebra& target() const { return tgt_; }
    const std::vector<Polynomial>& images() const { return images_; }
    bool verified() const { return verified_; }

    // Substitution followed by target normal form.
    Polynomial apply(const Polynomial& p) const;
    Polynomial apply_raw(const Polynomial& p) const; // no normal form

    // this: A -> B, g: B -> C; returns A -> C.
    AlgebraMap then(const AlgebraMap& g) const;

    // Kernel as an ideal of the source ambient (includes the source relations).
    IdealPresentation kernel() const;
    // Membership in the image; on success returns the witness preimage, i.e.
    // the block-order normal form re-normalized in the source.
    std::optional<Polynomial> image_member(const Polynomial& b) const;
    Polynomial preimage(const Polynomial& b) const; // throws no-preimage

    bool is_injective() const;
    bool is_surjective() const; // every target generator has a preimage

private:
    struct Graph; // block-order elimination data
    std::shared_ptr<const Graph> graph() const;

    PresentedAlgebra src_, tgt_;
    std::vector<Polynomial> images_;
    bool verified_ = false;

    mutable std::mutex mu_;
    mutable std::shared_ptr<const Graph> graph_;

public:
    AlgebraMap(const AlgebraMap& o);
    AlgebraMap& operator=(const AlgebraMap& o);
    AlgebraMap(AlgebraMap&& o) noexcept;
    AlgebraMap& operator=(AlgebraMap&& o) noexcept;
    ~AlgebraMap();
};

// --- units, annihilators ---------------------------------------------------

bool is_unit(const PresentedAlgebra& a, const Polynomial& z);
// (J : z) presented in the ambient; its image in A is ann_A(z).
IdealPresentation annihilator(const PresentedAlgebra& a, const Polynomial& z);

// --- pushouts ----------------------------------------------------------------

struct Pushout {
    PresentedAlgebra algebra; // A (x)_R S
    AlgebraMap from_left;     // A -> P
    AlgebraMap from_right;    // S -> P
};
// f: R -> A, g: R -> S with a common source.
Pushout tensor_pushout(const AlgebraMap& f, const AlgebraMap& g);

// --- characteristic p tools --------------------------------------------------

bool has_char_p(const PresentedAlgebra& a); // coefficient ring Z/p, p prime

// x_i -> x_i^p endomorphism; requires char p.
AlgebraMap frobenius_endo(const PresentedAlgebra& a);
IdealPresentation frobenius_kernel(const PresentedAlgebra& a);
// Reduced iff Frobenius is injective (valid for F_p-algebras).
bool is_reduced(const PresentedAlgebra& a);

// Constructs B (x)_{A,phi} A -> B and decides bijectivity.
struct RelativeFrobenius {
    Pushout twist;   // B (x)_{A, phi} A
    AlgebraMap map;  // twist -> B
    bool injective;
    bool surjective;
    bool isomorphism;
};
RelativeFrobenius relative_frobenius(const AlgebraMap& f);

// --- weak etaleness certificates ----------------------------------------------

struct EtaleCertificate {
    enum class Kind { Localization, Zariskization, StandardEtale };
    Kind kind = Kind::Localization;
    // Localization: g (source ambient) becomes invertible.
    // StandardEtale: h monic in zvar over the source; g lives in source+zvar
    // and is inverted in the target. Both stored as text until bound.
    std::string g_text;
    std::string h_text;
    std::string zvar = "z";
    std::string svar = "s";
};

struct EtaleTarget {
    PresentedAlgebra algebra;
    AlgebraMap map; // source -> target
};
// Builds the certified target presentation. Zariskization certificates do not
// build a presentation (they only tag tower semantics) and are rejected here.
EtaleTarget build_etale_target(const PresentedAlgebra& a, const EtaleCertificate& cert);

// Validates the certificate against a given map: localization -> image of g is
// a unit; standard etale -> h monic, h(z) = 0 in the target, h' a unit.
bool etale_check(const EtaleCertificate& cert, const AlgebraMap& f, std::string* why = nullptr);

// --- integrality certificates ---------------------------------------------------

struct IntegralityCertificate {
    // monic_texts[j] is a monic polynomial in `wvar` over the source ambient,
    // satisfied by the j-th target generator.
    std::vector<std::string> monic_texts;
    std::string wvar = "w";
};
// Throws precondition on arity mismatch; returns false with a reason if some
// certificate polynomial is non-monic or fails to vanish.
bool validate_integrality(const AlgebraMap& f, const IntegralityCertificate& cert,
                          std::string* why = nullptr);

// --- dimension -----------------------------------------------------------------

// GB dimension of A over a prime field: the size of a maximal independent set
// of variables for the leading-term ideal. Throws not-applicable for non-field
// coefficients or the zero ring.
int krull_dim(const PresentedAlgebra& a);

// Reinterpret the presentation over a quotient coefficient ring (the canonical
// coefficient map must exist).
PresentedAlgebra change_coefficients(const PresentedAlgebra& a, const CoefficientRing& ring);

} // namespace perftower

#endif
