#include "perftower/descr.hpp"

#include "perftower/error.hpp"
#include "perftower/parse.hpp"

#include <algorithm>
#include <sstream>

namespace perftower {

namespace {

struct Line {
    int number = 0;
    std::string key;   // "x" for "x = v", section name for "x {", empty for "}"
    std::string value; // after '='
    bool opens = false;
    bool closes = false;
};

std::vector<Line> lex_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        auto l = raw.find_first_not_of(" \t\r");
        if (l == std::string::npos)
            continue;
        auto r = raw.find_last_not_of(" \t\r");
        std::string s = raw.substr(l, r - l + 1);
        Line line;
        line.number = no;
        if (s == "}") {
            line.closes = true;
        } else if (s.back() == '{') {
            line.opens = true;
            std::string name = s.substr(0, s.size() - 1);
            auto e = name.find_last_not_of(" \t");
            if (e == std::string::npos)
                throw ParseError("section without a name", no, 1);
            line.key = name.substr(0, e + 1);
        } else {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected 'key = value', a section, or '}'", no, 1);
            if (eq == 0)
                throw ParseError("missing key before '='", no, 1);
            auto ke = s.find_last_not_of(" \t", eq - 1);
            line.key = s.substr(0, ke + 1);
            auto vs = s.find_first_not_of(" \t", eq + 1);
            line.value = vs == std::string::npos ? "" : s.substr(vs);
        }
        out.push_back(std::move(line));
    }
    return out;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::uint64_t parse_u64(const Line& ln) {
    try {
        return std::stoull(ln.value);
    } catch (...) {
        throw ParseError("expected a non-negative integer for '" + ln.key + "'", ln.number, 1);
    }
}

[[noreturn]] void schema_error(const std::string& what) { fail("schema-error", what); }

void parse_params(const std::vector<Line>& lines, std::size_t& i, ParamsDesc& p) {
    for (++i; i < lines.size(); ++i) {
        const Line& ln = lines[i];
        if (ln.closes)
            return;
        if (ln.opens)
            throw ParseError("no nested sections inside params", ln.number, 1);
        if (ln.key == "n_max")
            p.n_max = parse_u64(ln);
        else if (ln.key == "depth")
            p.depth = parse_u64(ln);
        else if (ln.key == "sample_size")
            p.sample_size = parse_u64(ln);
        else if (ln.key == "seed")
            p.seed = parse_u64(ln);
        else
            throw ParseError("unknown params key '" + ln.key + "'", ln.number, 1);
    }
    schema_error("unterminated params section");
}

void validate(Description& d);

} // namespace

Description parse_description(const std::string& text) {
    std::vector<Line> lines = lex_lines(text);
    if (lines.empty())
        schema_error("missing levels: empty description");
    std::size_t i = 0;
    if (!lines[i].opens || (lines[i].key != "tower" && lines[i].key != "pair"))
        throw ParseError("expected a 'tower {' or 'pair {' document", lines[i].number, 1);

    Description d;
    d.kind = lines[i].key == "tower" ? Description::Kind::TowerDoc : Description::Kind::PairDoc;

    for (++i; i < lines.size(); ++i) {
        const Line& ln = lines[i];
        if (ln.closes) {
            ++i;
            if (i != lines.size())
                throw ParseError("trailing input after the document", lines[i].number, 1);
            validate(d);
            return d;
        }
        if (ln.opens) {
            if (ln.key == "level") {
                LevelDesc lv;
                for (++i; i < lines.size() && !lines[i].closes; ++i) {
                    const Line& sub = lines[i];
                    if (sub.opens)
                        throw ParseError("no nested sections inside level", sub.number, 1);
                    if (sub.key == "vars")
                        lv.vars = split_names(sub.value);
                    else if (sub.key == "relations")
                        lv.relations = sub.value;
                    else
                        throw ParseError("unknown level key '" + sub.key + "'", sub.number, 1);
                }
                if (i == lines.size())
                    schema_error("unterminated level section");
                d.levels.push_back(std::move(lv));
            } else if (ln.key == "transition") {
                TransitionDesc tr;
                for (++i; i < lines.size() && !lines[i].closes; ++i) {
                    const Line& sub = lines[i];
                    if (sub.key == "images")
                        tr.images = sub.value;
                    else
                        throw ParseError("unknown transition key '" + sub.key + "'",
                                         sub.number, 1);
                }
                if (i == lines.size())
                    schema_error("unterminated transition section");
                d.transitions.push_back(std::move(tr));
            } else if (ln.key == "integrality") {
                IntegralityDesc ig;
                for (++i; i < lines.size() && !lines[i].closes; ++i) {
                    const Line& sub = lines[i];
                    if (sub.key == "monic")
                        ig.monic.push_back(sub.value);
                    else
                        throw ParseError("unknown integrality key '" + sub.key + "'",
                                         sub.number, 1);
                }
                if (i == lines.size())
                    schema_error("unterminated integrality section");
                d.integrality.push_back(std::move(ig));
            } else if (ln.key == "basechange") {
                BaseChangeDesc bc;
                for (++i; i < lines.size() && !lines[i].closes; ++i) {
                    const Line& sub = lines[i];
                    if (sub.key == "kind")
                        bc.kind = sub.value;
                    else if (sub.key == "h")
                        bc.h = sub.value;
                    else if (sub.key == "g")
                        bc.g = sub.value;
                    else
                        throw ParseError("unknown basechange key '" + sub.key + "'",
                                         sub.number, 1);
                }
                if (i == lines.size())
                    schema_error("unterminated basechange section");
                d.basechange = std::move(bc);
            } else if (ln.key == "params") {
                parse_params(lines, i, d.params);
            } else {
                throw ParseError("unknown section '" + ln.key + "'", ln.number, 1);
            }
            continue;
        }
        if (ln.key == "name")
            d.name = ln.value;
        else if (ln.key == "coeff")
            d.coeff = ln.value;
        else if (ln.key == "p")
            d.p = mpz_class(ln.value);
        else if (ln.key == "zariskian")
            d.zariskian = ln.value;
        else if (ln.key == "f0")
            d.f0 = ln.value;
        else if (ln.key == "f1")
            d.f1 = ln.value;
        else if (ln.key == "vars")
            d.vars = split_names(ln.value);
        else if (ln.key == "relations")
            d.relations = ln.value;
        else if (ln.key == "f")
            d.f = ln.value;
        else
            throw ParseError("unknown key '" + ln.key + "'", ln.number, 1);
    }
    schema_error("unterminated document");
}

namespace {

void validate(Description& d) {
    parse_coeff_ring(d.coeff); // throws on an unknown ring
    if (d.kind == Description::Kind::TowerDoc) {
        if (mpz_probab_prime_p(d.p.get_mpz_t(), 30) == 0)
            schema_error("p = " + d.p.get_str() + " is not prime");
        if (d.levels.empty())
            schema_error("missing levels");
        if (d.transitions.size() + 1 != d.levels.size())
            schema_error("need exactly one transition between consecutive levels");
        if (d.f0.empty())
            schema_error("missing f0");
        if (d.zariskian != "computed" && d.zariskian != "declared" &&
            d.zariskian != "after_zariskization")
            schema_error("unknown zariskian semantics '" + d.zariskian + "'");
        if (!d.integrality.empty() && d.integrality.size() != d.transitions.size())
            schema_error("need one integrality certificate per transition");
        // Polynomial strings must parse in their declared ambients; building
        // the tower also validates map well-definedness.
        build_tower(d);
        if (!d.integrality.empty())
            build_integrality(d);
        if (d.basechange)
            build_basechange_cert(d);
    } else {
        if (d.f.empty())
            schema_error("missing f for the pair");
        build_pair(d);
    }
}

} // namespace

Tower build_tower(const Description& d) {
    CoefficientRing ring = parse_coeff_ring(d.coeff);
    std::vector<PresentedAlgebra> levels;
    for (const auto& lv : d.levels) {
        AmbientPtr amb = Ambient::make(ring, lv.vars);
        levels.emplace_back(amb, parse_polynomial_list(lv.relations, amb));
    }
    std::vector<AlgebraMap> transitions;
    for (std::size_t i = 0; i < d.transitions.size(); ++i) {
        std::vector<Polynomial> images =
            parse_polynomial_list(d.transitions[i].images, levels[i + 1].ambient());
        transitions.emplace_back(levels[i], levels[i + 1], std::move(images));
    }
    Polynomial f0 = parse_polynomial(d.f0, levels[0].ambient());
    std::optional<Polynomial> f1;
    if (!d.f1.empty()) {
        if (levels.size() < 2)
            schema_error("f1 declared but the tower has a single level");
        f1 = parse_polynomial(d.f1, levels[1].ambient());
    }
    ZariskianSemantics sem = ZariskianSemantics::Computed;
    if (d.zariskian == "declared")
        sem = ZariskianSemantics::Declared;
    else if (d.zariskian == "after_zariskization")
        sem = ZariskianSemantics::AfterZariskization;
    return Tower(levels, transitions, f0, f1, d.p, sem);
}

PrincipalPair build_pair(const Description& d) {
    CoefficientRing ring = parse_coeff_ring(d.coeff);
    AmbientPtr amb = Ambient::make(ring, d.vars);
    PresentedAlgebra a(amb, parse_polynomial_list(d.relations, amb));
    return PrincipalPair(a, parse_polynomial(d.f, amb));
}

std::vector<IntegralityCertificate> build_integrality(const Description& d) {
    std::vector<IntegralityCertificate> out;
    for (const auto& ig : d.integrality) {
        IntegralityCertificate c;
        c.monic_texts = ig.monic;
        out.push_back(std::move(c));
    }
    return out;
}

EtaleCertificate build_basechange_cert(const Description& d) {
    if (!d.basechange)
        fail("precondition", "description has no basechange section");
    EtaleCertificate c;
    const BaseChangeDesc& bc = *d.basechange;
    if (bc.kind == "localization")
        c.kind = EtaleCertificate::Kind::Localization;
    else if (bc.kind == "standard_etale")
        c.kind = EtaleCertificate::Kind::StandardEtale;
    else if (bc.kind == "zariskization")
        c.kind = EtaleCertificate::Kind::Zariskization;
    else
        schema_error("unknown basechange kind '" + bc.kind + "'");
    c.g_text = bc.g;
    c.h_text = bc.h;
    if (c.kind == EtaleCertificate::Kind::Localization && c.g_text.empty())
        schema_error("localization basechange needs g");
    if (c.kind == EtaleCertificate::Kind::StandardEtale && c.h_text.empty())
        schema_error("standard_etale basechange needs h");
    return c;
}

} // namespace perftower
