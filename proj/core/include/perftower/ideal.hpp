#ifndef PERFTOWER_IDEAL_HPP
#define PERFTOWER_IDEAL_HPP

#include "perftower/poly.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace perftower {

// One element of a computed strong basis, together with its expression over
// the (lifted) input generators: poly == sum_k provenance[k] * gen[k] exactly.
struct GBElement {
    Polynomial poly;
    std::vector<Polynomial> provenance;
};

// A strong Groebner basis computation result. All computation happens over Z;
// ideals over Z/m are lifted with the modulus adjoined as an extra generator,
// which turns annihilator relations into ordinary S/G-pairs against the
// constant m and keeps a single engine for every coefficient ring.
struct GBData {
    AmbientPtr lifted_ambient; // same variables, ring Z
    MonomialOrder order = MonomialOrder::grevlex();
    std::vector<Polynomial> lifted_gens; // declared gens lifted; modulus appended for Z/m
    bool has_modulus_gen = false;        // last lifted gen is the modulus constant
    bool has_provenance = false;         // basis elements carry generator cofactors
    std::vector<GBElement> basis;        // reduced strong basis, canonically sorted
};

using GBDataPtr = std::shared_ptr<const GBData>;

// Finitely generated ideal in an ambient ring, with per-order GB caching.
class IdealPresentation {
public:
    IdealPresentation() = default;
    IdealPresentation(AmbientPtr ambient, std::vector<Polynomial> gens);

    IdealPresentation(const IdealPresentation& o);
    IdealPresentation& operator=(const IdealPresentation& o);
    IdealPresentation(IdealPresentation&& o) noexcept;
    IdealPresentation& operator=(IdealPresentation&& o) noexcept;

    static IdealPresentation zero(const AmbientPtr& amb) { return IdealPresentation(amb, {}); }

    const AmbientPtr& ambient() const { return ambient_; }
    const std::vector<Polynomial>& gens() const { return gens_; }

    // Strong GB under the given order (cached). Provenance (expression of the
    // basis over the generators, for membership witnesses) is tracked only on
    // request; it is expensive on elimination-sized inputs.
    GBDataPtr groebner(const MonomialOrder& order, bool want_provenance = false) const;
    GBDataPtr groebner() const; // grevlex
    std::vector<Polynomial> basis_in_ring(const MonomialOrder& order) const;
    std::vector<Polynomial> basis_in_ring() const;

    std::string to_string() const; // "(g1, g2, ...)" canonical

    bool operator==(const IdealPresentation& o) const = delete; // use ideal_equal

private:
    AmbientPtr ambient_;
    std::vector<Polynomial> gens_;

    mutable std::mutex mu_;
    mutable std::vector<std::pair<std::string, GBDataPtr>> cache_; // keyed by order string
};

// --- kernel operations ---------------------------------------------------

// Strong GB as a presentation whose generators are the reduced basis.
IdealPresentation groebner_basis(const std::vector<Polynomial>& gens,
                                 const MonomialOrder& order, const AmbientPtr& amb);

// Unique remainder modulo the strong basis (canonical Euclidean remainders).
Polynomial normal_form(const Polynomial& p, const IdealPresentation& I);
Polynomial normal_form(const Polynomial& p, const IdealPresentation& I,
                       const MonomialOrder& order);

struct MemberResult {
    bool member = false;
    // Present iff member: p == sum_k cofactors[k] * I.gens()[k] in the ring.
    std::vector<Polynomial> cofactors;
};
MemberResult ideal_member(const Polynomial& p, const IdealPresentation& I);
bool ideal_contains(const IdealPresentation& I, const IdealPresentation& J); // J subset of I
bool ideal_equal(const IdealPresentation& I, const IdealPresentation& J);

// I intersect C[x_{k+1},...]; result presented in the smaller ambient.
IdealPresentation eliminate(const IdealPresentation& I, std::size_t first_k);

// (I : g); colon by zero is the unit ideal.
IdealPresentation colon(const IdealPresentation& I, const Polynomial& g);
IdealPresentation colon_power(const IdealPresentation& I, const Polynomial& g, std::uint64_t n);
// (I : g^infinity) by iterating colon to a fixed point (ACC).
IdealPresentation saturate(const IdealPresentation& I, const Polynomial& g);
// g in rad(I), decided by 1 in I + (1 - t g).
bool radical_member(const Polynomial& g, const IdealPresentation& I);

IdealPresentation intersect(const IdealPresentation& I, const IdealPresentation& J);

// Sum presented on the concatenated generators.
IdealPresentation ideal_sum(const IdealPresentation& I, const IdealPresentation& J);
IdealPresentation ideal_sum(const IdealPresentation& I, const std::vector<Polynomial>& more);

bool is_unit_ideal(const IdealPresentation& I);
bool is_zero_ideal(const IdealPresentation& I);

// --- cache & stats hooks --------------------------------------------------

struct GBStats {
    std::uint64_t queries = 0;  // logical GB requests (cache-independent)
    std::uint64_t computed = 0; // actual Buchberger runs
};
GBStats gb_stats_snapshot();

// Optional persistent backend consulted by the in-process cache.
class GBCacheBackend {
public:
    virtual ~GBCacheBackend() = default;
    virtual std::optional<std::string> get(const std::string& key) = 0;
    virtual void put(const std::string& key, const std::string& value) = 0;
};
void set_gb_cache_backend(std::shared_ptr<GBCacheBackend> backend);
void clear_gb_memory_cache();

// Canonical serialization used for cache keys and payloads.
std::string serialize_gb(const GBData& gb);
GBDataPtr deserialize_gb(const std::string& text);
std::string gb_cache_key(const AmbientPtr& lifted_ambient,
                         const std::vector<Polynomial>& lifted_gens,
                         const MonomialOrder& order);

// Internal entry point shared by IdealPresentation and tests.
GBDataPtr compute_strong_gb(const AmbientPtr& lifted_ambient,
                            const std::vector<Polynomial>& lifted_gens,
                            bool has_modulus_gen, const MonomialOrder& order,
                            bool want_provenance = false);

// Division with cofactors over an explicit basis (used internally and by
// witness extraction). remainder == p - sum_k cofactors[k] * basis[k].
struct DivisionResult {
    Polynomial remainder;
    std::vector<Polynomial> cofactors;
};
DivisionResult divide_full(const Polynomial& p, const std::vector<Polynomial>& basis,
                           const MonomialOrder& order);

// Exact division over Z[x...]: q with p == q * g, or nullopt.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& g);

// Lift helpers (Z/m handling).
AmbientPtr lifted_ambient_of(const AmbientPtr& amb);
Polynomial lift_poly(const Polynomial& p, const AmbientPtr& lifted);
Polynomial project_poly(const Polynomial& p, const AmbientPtr& declared);

} // namespace perftower

#endif
