#include "corpus.hpp"

#include <perftower/error.hpp>
#include <perftower/parse.hpp>

namespace perftower::testsupport {

std::string family_name(Family f) {
    switch (f) {
    case Family::MixedP2: return "mixed_p2";
    case Family::MixedP3: return "mixed_p3";
    case Family::Char2Poly: return "char2_poly";
    case Family::Char2Torsion: return "char2_torsion";
    }
    return "?";
}

std::string mutation_name(Mutation m) {
    switch (m) {
    case Mutation::None: return "none";
    case Mutation::BreakB: return "break_b";
    case Mutation::BreakC: return "break_c";
    case Mutation::BreakD: return "break_d";
    case Mutation::BreakF1: return "break_f1";
    case Mutation::BreakF2: return "break_f2";
    case Mutation::BreakTorsion: return "break_torsion";
    }
    return "?";
}

namespace {

constexpr std::size_t kLevels = 4; // indices 0..3; mutations act at the top

struct Pieces {
    std::vector<PresentedAlgebra> levels;
    std::vector<AlgebraMap> transitions;
    Polynomial f0;
    std::optional<Polynomial> f1;
    mpz_class p;
};

std::string pow_str(unsigned long p, std::size_t i) {
    unsigned long e = 1;
    for (std::size_t k = 0; k < i; ++k)
        e *= p;
    return std::to_string(e);
}

// Z[x_i]/(x_i^(p^i) - p), x_i -> x_{i+1}^p.
Pieces mixed_pieces(unsigned long p, Mutation m) {
    auto Z = CoefficientRing::integers();
    Pieces out;
    out.p = p;
    out.levels.push_back(present_algebra(Z, {}, {}));
    for (std::size_t i = 1; i < kLevels; ++i) {
        std::string v = "x" + std::to_string(i);
        out.levels.push_back(
            present_algebra(Z, {v}, {v + "^" + pow_str(p, i) + " - " + std::to_string(p)}));
    }
    std::string top = "x" + std::to_string(kLevels - 1);
    switch (m) {
    case Mutation::BreakB:
        out.levels.back() = present_algebra(
            Z, {top},
            {top + "^" + pow_str(p, kLevels - 1) + " - " + std::to_string(p),
             top + "^" + std::to_string(2 * p)});
        break;
    case Mutation::BreakC:
        out.levels.back() = present_algebra(
            Z, {top, "w"}, {top + "^" + pow_str(p, kLevels - 1) + " - " + std::to_string(p)});
        break;
    case Mutation::BreakD:
        out.levels.back() = present_algebra(
            Z, {"v"}, {"v^" + pow_str(p, kLevels - 2) + " - " + std::to_string(p)});
        break;
    case Mutation::BreakF2:
        out.levels.back() = present_algebra(
            Z, {top, "w"},
            {top + "^" + pow_str(p, kLevels - 1) + " - " + std::to_string(p), "w^2"});
        break;
    case Mutation::BreakTorsion:
        out.levels.back() = present_algebra(
            Z, {top, "y"},
            {top + "^" + pow_str(p, kLevels - 1) + " - " + std::to_string(p),
             std::to_string(p * p) + "*y", "y^2"});
        break;
    default:
        break;
    }

    for (std::size_t i = 0; i + 1 < kLevels; ++i) {
        const auto& tgt = out.levels[i + 1];
        std::vector<Polynomial> images;
        if (i > 0) {
            std::string img = (m == Mutation::BreakD && i + 2 == kLevels)
                                  ? "v"
                                  : "x" + std::to_string(i + 1) + "^" + std::to_string(p);
            images.push_back(parse_polynomial(img, tgt.ambient()));
        }
        out.transitions.emplace_back(out.levels[i], tgt, std::move(images));
    }
    out.f0 = Polynomial::constant(out.levels[0].ambient(), p);
    std::string f1 = m == Mutation::BreakF1 ? "x1 + " + std::to_string(p) : "x1";
    out.f1 = parse_polynomial(f1, out.levels[1].ambient());
    return out;
}

// F2[x_i] (optionally with the torsion idempotent y), x_i -> x_{i+1}^2.
Pieces char2_pieces(bool torsion, Mutation m) {
    auto F2 = CoefficientRing::prime_field(2);
    Pieces out;
    out.p = 2;
    auto level_vars = [&](std::size_t i) {
        std::vector<std::string> vs = {"x" + std::to_string(i)};
        if (torsion)
            vs.push_back("y");
        return vs;
    };
    auto level_rels = [&](std::size_t i) {
        std::vector<std::string> rs;
        if (torsion) {
            rs.push_back("x" + std::to_string(i) + "*y");
            rs.push_back("y^2 - y");
        }
        return rs;
    };
    for (std::size_t i = 0; i < kLevels; ++i)
        out.levels.push_back(present_algebra(F2, level_vars(i), level_rels(i)));

    std::string top = "x" + std::to_string(kLevels - 1);
    switch (m) {
    case Mutation::BreakB: {
        auto rels = level_rels(kLevels - 1);
        rels.push_back(top + "^6");
        out.levels.back() = present_algebra(F2, level_vars(kLevels - 1), rels);
        break;
    }
    case Mutation::BreakC: {
        auto vars = level_vars(kLevels - 1);
        vars.push_back("w");
        out.levels.back() = present_algebra(F2, vars, level_rels(kLevels - 1));
        break;
    }
    case Mutation::BreakD: {
        std::vector<std::string> vars = {"v"};
        std::vector<std::string> rels;
        if (torsion) {
            vars.push_back("y");
            rels = {"v*y", "y^2 - y"};
        }
        out.levels.back() = present_algebra(F2, vars, rels);
        break;
    }
    case Mutation::BreakF2: {
        auto vars = level_vars(kLevels - 1);
        vars.push_back("w");
        auto rels = level_rels(kLevels - 1);
        rels.push_back("w^2");
        out.levels.back() = present_algebra(F2, vars, rels);
        break;
    }
    case Mutation::BreakTorsion: {
        if (torsion)
            break; // handled through the transition below
        out.levels.back() = present_algebra(
            F2, {top, "y"}, {top + "^16*y", "y^2"});
        break;
    }
    default:
        break;
    }

    for (std::size_t i = 0; i + 1 < kLevels; ++i) {
        const auto& tgt = out.levels[i + 1];
        bool topmost = i + 2 == kLevels;
        std::string ximg = (m == Mutation::BreakD && topmost)
                               ? "v"
                               : "x" + std::to_string(i + 1) + "^2";
        std::vector<Polynomial> images = {parse_polynomial(ximg, tgt.ambient())};
        if (torsion) {
            Polynomial yimg = (m == Mutation::BreakTorsion && topmost)
                                  ? Polynomial::zero(tgt.ambient())
                                  : parse_polynomial("y", tgt.ambient());
            images.push_back(std::move(yimg));
        }
        out.transitions.emplace_back(out.levels[i], tgt, std::move(images));
    }
    out.f0 = Polynomial::variable(out.levels[0].ambient(), 0);
    std::string f1 = m == Mutation::BreakF1 ? "x1 + x1^2" : "x1";
    out.f1 = parse_polynomial(f1, out.levels[1].ambient());
    return out;
}

Pieces family_pieces(Family f, Mutation m) {
    switch (f) {
    case Family::MixedP2: return mixed_pieces(2, m);
    case Family::MixedP3: return mixed_pieces(3, m);
    case Family::Char2Poly: return char2_pieces(false, m);
    case Family::Char2Torsion: return char2_pieces(true, m);
    }
    fail("internal", "unknown family");
}

} // namespace

Tower build_family(Family f, ZariskianSemantics sem) {
    Pieces pc = family_pieces(f, Mutation::None);
    return Tower(pc.levels, pc.transitions, pc.f0, pc.f1, pc.p, sem);
}

Tower build_mutated(Family f, Mutation m, ZariskianSemantics sem) {
    Pieces pc = family_pieces(f, m);
    return Tower(pc.levels, pc.transitions, pc.f0, pc.f1, pc.p, sem);
}

std::vector<IntegralityCertificate> family_certs(Family f) {
    std::vector<IntegralityCertificate> out;
    switch (f) {
    case Family::MixedP2:
        out.push_back({{"w^2 - 2"}, "w"});
        out.push_back({{"w^2 - x1"}, "w"});
        out.push_back({{"w^2 - x2"}, "w"});
        break;
    case Family::MixedP3:
        out.push_back({{"w^3 - 3"}, "w"});
        out.push_back({{"w^3 - x1"}, "w"});
        out.push_back({{"w^3 - x2"}, "w"});
        break;
    case Family::Char2Poly:
        out.push_back({{"w^2 - x0"}, "w"});
        out.push_back({{"w^2 - x1"}, "w"});
        out.push_back({{"w^2 - x2"}, "w"});
        break;
    case Family::Char2Torsion:
        out.push_back({{"w^2 - x0", "w - y"}, "w"});
        out.push_back({{"w^2 - x1", "w - y"}, "w"});
        out.push_back({{"w^2 - x2", "w - y"}, "w"});
        break;
    }
    return out;
}

std::vector<ExpectedRow> expected_flips(Family f, Mutation m) {
    const int top = static_cast<int>(kLevels) - 1; // mutated level
    const int tr = top - 1;                        // top transition
    auto na_transition = [&](std::vector<ExpectedRow>& v, int i) {
        for (const char* c : {"g.decompose", "g.injective", "g.surjective", "gp.phi0",
                              "gp.deg1", "gp.stab", "thmA.agree"})
            v.push_back({c, i, Verdict::NotApplicable});
    };
    std::vector<ExpectedRow> v;
    switch (m) {
    case Mutation::None:
        break;
    case Mutation::BreakB:
        v.push_back({"b", tr, Verdict::Fail});
        v.push_back({"d", tr, Verdict::NotApplicable});
        v.push_back({"f2", tr, Verdict::NotApplicable});
        v.push_back({"star", tr, Verdict::NotApplicable});
        na_transition(v, tr);
        break;
    case Mutation::BreakC:
        v.push_back({"c", tr, Verdict::Fail});
        v.push_back({"d", tr, Verdict::NotApplicable});
        v.push_back({"f2", tr, Verdict::NotApplicable});
        v.push_back({"star", tr, Verdict::NotApplicable});
        na_transition(v, tr);
        break;
    case Mutation::BreakD:
        v.push_back({"d", tr, Verdict::Fail});
        na_transition(v, tr);
        break;
    case Mutation::BreakF1:
        v.push_back({"f1", 1, Verdict::Fail});
        for (int i = 0; i <= tr; ++i)
            na_transition(v, i);
        break;
    case Mutation::BreakF2:
        v.push_back({"f2", tr, Verdict::Fail});
        na_transition(v, tr);
        break;
    case Mutation::BreakTorsion:
        if (f == Family::Char2Torsion) {
            // y -> 0 kills both the reduction injectivity and the image of y^2.
            v.push_back({"b", tr, Verdict::Fail});
            v.push_back({"c", tr, Verdict::Fail});
            v.push_back({"d", tr, Verdict::NotApplicable});
            v.push_back({"f2", tr, Verdict::NotApplicable});
            v.push_back({"star", tr, Verdict::NotApplicable});
            na_transition(v, tr);
        } else {
            // A torsion element at the top that I0 does not kill.
            v.push_back({"f2", tr, Verdict::Fail});
            v.push_back({"g.small_torsion", top, Verdict::Fail});
            v.push_back({"gp.small_torsion", top, Verdict::Fail});
            na_transition(v, tr);
        }
        break;
    }
    return v;
}

} // namespace perftower::testsupport
