#ifndef PERFTOWER_TESTS_CORPUS_HPP
#define PERFTOWER_TESTS_CORPUS_HPP

#include <perftower/tower.hpp>

namespace perftower::testsupport {

enum class Family { MixedP2, MixedP3, Char2Poly, Char2Torsion };
enum class Mutation {
    None,
    BreakB,       // collapse the top quotient
    BreakC,       // free variable whose p-th power is not in the image
    BreakD,       // identity-style top transition starves the Frobenius image
    BreakF1,      // twist f1 so (f1^p) no longer generates I0 R_1
    BreakF2,      // nilpotent variable enlarging the Frobenius kernel
    BreakTorsion, // break the torsion bijection / small-torsion condition
};

std::string family_name(Family f);
std::string mutation_name(Mutation m);

// Four-level towers; semantics as given (the mutation suite uses Declared).
Tower build_family(Family f, ZariskianSemantics sem = ZariskianSemantics::Declared);
Tower build_mutated(Family f, Mutation m, ZariskianSemantics sem = ZariskianSemantics::Declared);

std::vector<IntegralityCertificate> family_certs(Family f);

// Expected row-level verdict changes of theorem_a_report under a mutation,
// relative to the unmutated family; every other row must keep its verdict.
struct ExpectedRow {
    std::string condition;
    int level;
    Verdict verdict;
};
std::vector<ExpectedRow> expected_flips(Family f, Mutation m);

} // namespace perftower::testsupport

#endif
