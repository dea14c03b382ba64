#include <doctest.h>

#include <perftower/error.hpp>
#include <perftower/pairs.hpp>
#include <perftower/parse.hpp>

#include "../support/random_pairs.hpp"

using namespace perftower;
using namespace perftower::testsupport;

namespace {

PrincipalPair make_pair(const CoefficientRing& ring, const std::vector<std::string>& vars,
                        const std::string& rels, const std::string& f) {
    AmbientPtr amb = Ambient::make(ring, vars);
    PresentedAlgebra a(amb, parse_polynomial_list(rels, amb));
    return PrincipalPair(a, parse_polynomial(f, amb));
}

} // namespace

TEST_SUITE_BEGIN("pairs");

TEST_CASE("torsion analysis on the worked examples") {
    auto P = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    auto ta = torsion_analysis(P);
    CHECK(ideal_equal(ta.torsion, IdealPresentation(P.algebra().ambient(),
                                                    parse_polynomial_list("y", P.algebra().ambient()))));
    CHECK(ta.small_torsion);

    auto D = make_pair(CoefficientRing::integers(), {}, "", "2");
    CHECK(is_zero_ideal(D.torsion()));
    CHECK(D.small_torsion());

    auto N = make_pair(CoefficientRing::prime_field(2), {"x"}, "x^4", "x");
    CHECK(is_unit_ideal(N.torsion()));
    CHECK_FALSE(N.small_torsion());
}

TEST_CASE("graded pieces") {
    auto Zp = make_pair(CoefficientRing::integers(), {}, "", "2");
    for (std::uint64_t n = 0; n <= 3; ++n) {
        auto g = gr_piece(Zp, n);
        CHECK(ideal_equal(g.presenting,
                          IdealPresentation(Zp.algebra().ambient(),
                                            {Polynomial::constant(Zp.algebra().ambient(), 2)})));
    }
    auto T = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    auto amb = T.algebra().ambient();
    CHECK(ideal_equal(T.colon_ladder(0),
                      IdealPresentation(amb, parse_polynomial_list("3, y^2", amb))));
    CHECK(ideal_equal(T.colon_ladder(1),
                      IdealPresentation(amb, parse_polynomial_list("3, y", amb))));
    CHECK(ideal_equal(T.colon_ladder(2), T.colon_ladder(1)));
}

TEST_CASE("multiplication ladder checks") {
    auto T = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    auto c1 = grn_lemma_check(T, 1);
    CHECK(c1.iso);
    CHECK(c1.cond3);
    CHECK(c1.agree);

    // (F2[x]/(x^4), x) in degree 3: the map from a one-dimensional piece onto
    // zero is not bijective and the torsion-escalation condition fails with it.
    auto N = make_pair(CoefficientRing::prime_field(2), {"x"}, "x^4", "x");
    auto c3 = grn_lemma_check(N, 3);
    CHECK_FALSE(c3.iso);
    CHECK_FALSE(c3.cond3);
    CHECK(c3.agree);
    CHECK(grn_lemma_check(N, 4).agree);
}

TEST_CASE("exactness checks") {
    auto A = make_pair(CoefficientRing::integers(), {"y"}, "y^2", "y");
    auto ex = exactness_check(A);
    CHECK(ex.ex1 == Verdict::Pass);

    auto T = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    auto ext = exactness_check(T);
    CHECK(ext.ex1 == Verdict::Pass);
    CHECK(ext.ex2 == Verdict::Pass);

    auto D = make_pair(CoefficientRing::integers(), {}, "", "2");
    auto exd = exactness_check(D);
    CHECK(exd.ex1 == Verdict::Pass);
    CHECK(exd.ex2 == Verdict::Pass);

    auto N = make_pair(CoefficientRing::prime_field(2), {"x"}, "x^4", "x");
    CHECK(exactness_check(N).ex2 == Verdict::NotApplicable);
}

TEST_CASE("graded families and torsion restriction round trip") {
    auto T = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    AlgebraMap id0 = AlgebraMap::identity(T.quotient_mod_generator());
    std::vector<Polynomial> torsion_images;
    for (const auto& g : T.torsion().gens())
        torsion_images.push_back(g);
    TorsionMap tm = make_torsion_map(T, T, id0, torsion_images);

    GradedMapFamily fam = extend_to_graded(id0, tm, 4);
    CHECK(fam.injective_reported);
    CHECK(fam.iso_reported);

    TorsionMap back = restrict_to_torsion(fam);
    REQUIRE(back.images.size() == T.torsion().gens().size());
    for (std::size_t i = 0; i < back.images.size(); ++i)
        CHECK(T.algebra().elements_equal(back.images[i], torsion_images[i]));
    CHECK(back.bijective_reported);
}

TEST_CASE("zero torsion gives the zero torsion map") {
    auto D = make_pair(CoefficientRing::integers(), {"x"}, "x^2 - 2", "x");
    AlgebraMap id0 = AlgebraMap::identity(D.quotient_mod_generator());
    TorsionMap tm = make_torsion_map(D, D, id0, {});
    GradedMapFamily fam = extend_to_graded(id0, tm, 3);
    TorsionMap back = restrict_to_torsion(fam);
    CHECK(back.images.empty());
    CHECK(back.bijective_reported);
}

TEST_CASE("torsion square violations are reported") {
    auto T = make_pair(CoefficientRing::integers(), {"y"}, "3y, y^2", "3");
    AlgebraMap id0 = AlgebraMap::identity(T.quotient_mod_generator());
    // Wrong torsion assignment: y -> 0 does not commute with the projections.
    TorsionMap bad = make_torsion_map(T, T, id0, {Polynomial::zero(T.algebra().ambient())});
    CHECK_THROWS_WITH_AS(extend_to_graded(id0, bad, 2),
                         doctest::Contains("diagram-violation"), Error);
}

TEST_CASE("anchor violations are reported") {
    // Target pair generator 9 = 3^2: the lift of 3 is not congruent to 9
    // modulo (81) + relations.
    auto amb = Ambient::make(CoefficientRing::integers(), {"y"});
    PresentedAlgebra A(amb, parse_polynomial_list("3y, y^2", amb));
    PrincipalPair src(A, parse_polynomial("3", amb));
    PrincipalPair tgt(A, parse_polynomial("9", amb));
    AlgebraMap base(src.quotient_mod_generator(), tgt.quotient_mod_generator(),
                    {parse_polynomial("y", amb)});
    GradedMapFamily fam{src, tgt, base, 2, false, false};
    CHECK_THROWS_WITH_AS(restrict_to_torsion(fam), doctest::Contains("anchor-violation"),
                         Error);
}

TEST_CASE("zariskization oracle") {
    auto Z8 = make_pair(CoefficientRing::integers_mod(8), {"x"}, "x^2 - 2", "x");
    ZariskOracle o8(Z8);
    CHECK(o8.is_zariskian());

    auto Zx = make_pair(CoefficientRing::integers(), {"x"}, "x^2 - 2", "x");
    ZariskOracle ox(Zx);
    CHECK_FALSE(ox.is_zariskian());

    auto K = make_pair(CoefficientRing::integers(), {"z"}, "z - 3z^2", "3");
    ZariskOracle ok_oracle(K);
    CHECK(ok_oracle.kernel_member(parse_polynomial("z", K.algebra().ambient())));

    // Oracle consistency: kernel membership implies fraction equality with 0.
    const AmbientPtr& amb = K.algebra().ambient();
    Polynomial one = Polynomial::constant(amb, 1);
    CHECK(ok_oracle.fractions_equal(parse_polynomial("z", amb), one, Polynomial::zero(amb), one));
    CHECK_THROWS_WITH_AS(
        ok_oracle.fractions_equal(one, parse_polynomial("z", amb), one, one),
        doctest::Contains("malformed-denominator"), Error);

    for (auto* pair : {&Z8, &Zx, &K}) {
        ZariskOracle o(*pair);
        auto sample = o.default_sample();
        CHECK(o.power_invariance(2, sample));
        CHECK(o.power_invariance(3, sample));
    }
}

TEST_CASE("integral zariskization comparison") {
    auto Z = present_algebra(CoefficientRing::integers(), {}, {});
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    PrincipalPair base(Z, Polynomial::constant(Z.ambient(), 2));

    SUBCASE("monic extension passes") {
        AlgebraMap f(Z, A, {});
        auto rep = intzar_check(base, f, IntegralityCertificate{{"w^2 - 2"}, "w"}, 50, 1);
        CHECK(rep.all_pass());
    }
    SUBCASE("identity is trivially integral") {
        AlgebraMap idz = AlgebraMap::identity(Z);
        auto rep = intzar_check(base, idz, IntegralityCertificate{{}, "w"}, 20, 1);
        CHECK(rep.all_pass());
    }
    SUBCASE("non-adic declarations are rejected") {
        AlgebraMap f(Z, A, {});
        CHECK_THROWS_WITH_AS(
            intzar_check(base, f, IntegralityCertificate{{"w^2 - 2"}, "w"}, 5, 1,
                         parse_polynomial("x", A.ambient())),
            doctest::Contains("precondition"), Error);
    }
}

TEST_CASE("lemma suites on a randomized corpus") {
    RandomPairStream stream(424242);
    int small_torsion_seen = 0;
    for (int k = 0; k < 60; ++k) {
        PrincipalPair pair = stream.next();
        for (std::uint64_t n = 1; n <= 3; ++n)
            CHECK(grn_lemma_check(pair, n).agree);
        auto ex = exactness_check(pair);
        CHECK(ex.ex1 == Verdict::Pass);
        if (pair.small_torsion()) {
            ++small_torsion_seen;
            CHECK(ex.ex2 == Verdict::Pass);
        }
        // The colon ladder increases.
        CHECK(ideal_contains(pair.colon_ladder(1), pair.colon_ladder(0)));
        CHECK(ideal_contains(pair.colon_ladder(2), pair.colon_ladder(1)));
    }
    CHECK(small_torsion_seen > 5);
}

TEST_SUITE_END();
