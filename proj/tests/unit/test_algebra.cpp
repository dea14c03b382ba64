#include <doctest.h>

#include <perftower/algebra.hpp>
#include <perftower/error.hpp>
#include <perftower/parse.hpp>
#include <perftower/rng.hpp>
#include <perftower/pairs.hpp>

#include "../support/finite_ring.hpp"

using namespace perftower;
using namespace perftower::testsupport;

TEST_SUITE_BEGIN("algebra");

TEST_CASE("presenting algebras") {
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    CHECK_FALSE(A.is_zero_ring());
    CHECK(A.elements_equal(parse_polynomial("x^2", A.ambient()),
                           parse_polynomial("2", A.ambient())));
    auto F = present_algebra(CoefficientRing::prime_field(2), {"x"}, {});
    CHECK(F.relations().gens().empty());
    auto Zero = present_algebra(CoefficientRing::integers(), {"x"}, {"x", "x - 1"});
    CHECK(Zero.is_zero_ring());
}

TEST_CASE("map well-definedness") {
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    auto B = present_algebra(CoefficientRing::integers(), {"u"}, {"u^4 - 2"});
    AlgebraMap t1(A, B, {parse_polynomial("u^2", B.ambient())});
    CHECK(t1.verified());
    CHECK_THROWS_WITH_AS(AlgebraMap(A, B, {parse_polynomial("u^3", B.ambient())}),
                         doctest::Contains("ill-defined-map"), Error);

    // Structure map from Z.
    auto Z = present_algebra(CoefficientRing::integers(), {}, {});
    AlgebraMap t0(Z, A, {});
    CHECK(t0.verified());
    CHECK(t0.apply(Polynomial::constant(Z.ambient(), 5)) ==
          parse_polynomial("5", A.ambient()));
}

TEST_CASE("kernel, image membership, preimages") {
    // t0bar: F2 -> F2[x]/(x^2) has zero kernel.
    auto F2 = CoefficientRing::prime_field(2);
    auto k = present_algebra(F2, {}, {});
    auto Q = present_algebra(F2, {"x"}, {"x^2"});
    AlgebraMap t0(k, Q, {});
    CHECK(is_zero_ideal(t0.kernel()));
    CHECK(t0.is_injective());

    // t1bar: F2[x]/(x^2) -> F2[u]/(u^4), x -> u^2.
    auto Qx = present_algebra(F2, {"x"}, {"x^2"});
    auto Qu = present_algebra(F2, {"u"}, {"u^4"});
    AlgebraMap t1(Qx, Qu, {parse_polynomial("u^2", Qu.ambient())});
    auto pre = t1.image_member(parse_polynomial("u^2", Qu.ambient()));
    REQUIRE(pre.has_value());
    CHECK(*pre == parse_polynomial("x", Qx.ambient()));
    CHECK_FALSE(t1.image_member(parse_polynomial("u", Qu.ambient())).has_value());
    CHECK(t1.preimage(Polynomial::constant(Qu.ambient(), 1)) ==
          Polynomial::constant(Qx.ambient(), 1));
    CHECK_THROWS_WITH_AS(t1.preimage(parse_polynomial("u", Qu.ambient())),
                         doctest::Contains("no-preimage"), Error);
    CHECK(t1.is_injective());
    CHECK_FALSE(t1.is_surjective());

    // Mixed characteristic kernel: Z[x]/(x^2-2) -> F2[x]/(x^2) catches 2.
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    AlgebraMap red(A, Qx, {parse_polynomial("x", Qx.ambient())});
    auto ker = red.kernel();
    CHECK(ideal_member(parse_polynomial("2", A.ambient()), ker).member);
    CHECK_FALSE(ideal_member(parse_polynomial("x", A.ambient()), ker).member);
}

TEST_CASE("map/preimage consistency on random elements") {
    auto F3 = CoefficientRing::prime_field(3);
    auto A = present_algebra(F3, {"x"}, {"x^9"});
    auto B = present_algebra(F3, {"u"}, {"u^27"});
    AlgebraMap f(A, B, {parse_polynomial("u^3", B.ambient())});
    REQUIRE(f.is_injective());
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        Polynomial a = random_element(A.ambient(), rng, 4, 3, 2);
        Polynomial img = f.apply(a);
        auto back = f.image_member(img);
        REQUIRE(back.has_value());
        // preimage(f(a)) - a lies in the kernel; here the map is injective.
        CHECK(A.elements_equal(*back, a));
    }
}

TEST_CASE("units and annihilators") {
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    CHECK(is_unit(A, parse_polynomial("1 + x", A.ambient())));
    CHECK_FALSE(is_unit(A, parse_polynomial("x", A.ambient())));
    CHECK_FALSE(is_unit(A, Polynomial::zero(A.ambient())));

    auto T = present_algebra(CoefficientRing::integers(), {"y"}, {"3y", "y^2"});
    CHECK(ideal_equal(annihilator(T, parse_polynomial("y", T.ambient())),
                      IdealPresentation(T.ambient(),
                                        parse_polynomial_list("3, y", T.ambient()))));
}

TEST_CASE("tensor pushouts") {
    auto Z = present_algebra(CoefficientRing::integers(), {}, {});
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    AlgebraMap toA(Z, A, {});

    SUBCASE("A tensor_R R = A") {
        Pushout pu = tensor_pushout(toA, AlgebraMap::identity(Z));
        CHECK(pu.algebra.ambient()->nvars() == 1);
        CHECK(pu.from_left.is_injective());
        CHECK(pu.from_left.is_surjective());
    }
    SUBCASE("reduction mod 2") {
        auto F2 = present_algebra(CoefficientRing::prime_field(2), {}, {});
        AlgebraMap toF2(Z, F2, {});
        Pushout pu = tensor_pushout(toA, toF2);
        CHECK(pu.algebra.ambient()->ring() == CoefficientRing::prime_field(2));
        // F2[x]/(x^2): x is a nonzero nilpotent.
        Polynomial x = pu.from_left.apply(parse_polynomial("x", A.ambient()));
        CHECK_FALSE(pu.algebra.element_is_zero(x));
        CHECK(pu.algebra.element_is_zero(x * x));
    }
    SUBCASE("localization as a pushout") {
        auto S = present_algebra(CoefficientRing::integers(), {"s"}, {"3s - 1"});
        AlgebraMap toS(Z, S, {});
        Pushout pu = tensor_pushout(toA, toS);
        CHECK(pu.algebra.ambient()->nvars() == 2);
        CHECK(is_unit(pu.algebra, pu.algebra.constant(3)));
        // Compatibility square: both routes from the base agree.
        Polynomial five = pu.from_left.apply(Polynomial::constant(A.ambient(), 5));
        Polynomial five2 = pu.from_right.apply(Polynomial::constant(S.ambient(), 5));
        CHECK(pu.algebra.elements_equal(five, five2));
    }
}

TEST_CASE("frobenius tools") {
    auto F2 = CoefficientRing::prime_field(2);
    auto Nil = present_algebra(F2, {"x"}, {"x^2"});
    CHECK_FALSE(is_reduced(Nil));
    CHECK(ideal_member(parse_polynomial("x", Nil.ambient()), frobenius_kernel(Nil)).member);
    auto Poly = present_algebra(F2, {"x"}, {});
    CHECK(is_reduced(Poly));

    auto Zx = present_algebra(CoefficientRing::integers(), {"x"}, {});
    CHECK_THROWS_WITH_AS(frobenius_endo(Zx), doctest::Contains("not-applicable"), Error);
}

TEST_CASE("reducedness against exhaustive nilpotent search") {
    struct Case { const char* vars; const char* rels; };
    std::vector<std::pair<PresentedAlgebra, bool>> cases;
    auto F2 = CoefficientRing::prime_field(2);
    auto F3 = CoefficientRing::prime_field(3);
    cases.emplace_back(present_algebra(F2, {"x"}, {"x^2"}), false);
    cases.emplace_back(present_algebra(F2, {"x"}, {"x^2 - x"}), true);
    cases.emplace_back(present_algebra(F2, {"x", "y"}, {"x*y", "x^3 - x", "y^2 - y"}), true);
    cases.emplace_back(present_algebra(F2, {"x", "y"}, {"x^2, y^2"}), false);
    cases.emplace_back(present_algebra(F3, {"x"}, {"x^3"}), false);
    cases.emplace_back(present_algebra(F3, {"x"}, {"x^3 - x"}), true);
    for (const auto& [alg, expected] : cases) {
        FiniteRing model(alg, 256);
        CHECK(is_reduced(alg) == expected);
        CHECK(model.has_nonzero_nilpotent() == !expected);
    }
}

TEST_CASE("relative frobenius on certified standard etale maps") {
    auto F2 = CoefficientRing::prime_field(2);
    auto A = present_algebra(F2, {"u"}, {});

    EtaleCertificate cert;
    cert.kind = EtaleCertificate::Kind::StandardEtale;
    cert.h_text = "z^2 + z + u";
    EtaleTarget target = build_etale_target(A, cert);
    std::string why;
    CHECK(etale_check(cert, target.map, &why));
    RelativeFrobenius rf = relative_frobenius(target.map);
    CHECK(rf.isomorphism);

    // Localization certificates validate and give relative Frobenius isos too.
    EtaleCertificate loc;
    loc.kind = EtaleCertificate::Kind::Localization;
    loc.g_text = "1 + u";
    EtaleTarget lt = build_etale_target(A, loc);
    CHECK(etale_check(loc, lt.map));
    CHECK(relative_frobenius(lt.map).isomorphism);

    // A non-etale extension fails the relative Frobenius test.
    auto B = present_algebra(F2, {"u", "z"}, {"z^2 - u"});
    AlgebraMap incl(A, B, {parse_polynomial("u", B.ambient())});
    CHECK_FALSE(relative_frobenius(incl).isomorphism);

    // Artin-Schreier with the wrong derivative is rejected.
    EtaleCertificate bad;
    bad.kind = EtaleCertificate::Kind::StandardEtale;
    bad.h_text = "z^2 + u";
    EtaleTarget bt = build_etale_target(A, bad);
    CHECK_FALSE(etale_check(bad, bt.map, &why));
    CHECK(why == "derivative is not a unit in the target");
}

TEST_CASE("integrality certificates") {
    auto Z = present_algebra(CoefficientRing::integers(), {}, {});
    auto A = present_algebra(CoefficientRing::integers(), {"x"}, {"x^2 - 2"});
    AlgebraMap f(Z, A, {});
    IntegralityCertificate good{{"w^2 - 2"}, "w"};
    std::string why;
    CHECK(validate_integrality(f, good, &why));
    IntegralityCertificate nonmonic{{"2w^2 - 4"}, "w"};
    CHECK_FALSE(validate_integrality(f, nonmonic, &why));
    IntegralityCertificate wrong{{"w^2 - 3"}, "w"};
    CHECK_FALSE(validate_integrality(f, wrong, &why));
    IntegralityCertificate arity{{}, "w"};
    CHECK_THROWS_WITH_AS(validate_integrality(f, arity, &why),
                         doctest::Contains("precondition"), Error);
}

TEST_CASE("krull dimension") {
    auto F2 = CoefficientRing::prime_field(2);
    CHECK(krull_dim(present_algebra(F2, {"x"}, {})) == 1);
    CHECK(krull_dim(present_algebra(F2, {"x", "y"}, {"x*y"})) == 1);
    CHECK(krull_dim(present_algebra(F2, {"x"}, {"x^4"})) == 0);
    CHECK(krull_dim(present_algebra(F2, {"x", "y"}, {})) == 2);
    CHECK_THROWS_WITH_AS(krull_dim(present_algebra(CoefficientRing::integers(), {"x"}, {})),
                         doctest::Contains("not-applicable"), Error);
}

TEST_SUITE_END();
