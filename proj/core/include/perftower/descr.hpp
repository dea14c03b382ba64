#ifndef PERFTOWER_DESCR_HPP
#define PERFTOWER_DESCR_HPP

#include "perftower/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perftower {

// Parsed form of the line-oriented description documents. A document is a
// single `tower { ... }` or `pair { ... }` block; keys are `key = value`
// lines, sections open with `name {` and close with `}`; `#` starts a
// comment. Polynomial values use the standard polynomial grammar.
struct LevelDesc {
    std::vector<std::string> vars;
    std::string relations; // comma-separated polynomial list, may be empty
};

struct TransitionDesc {
    std::string images; // comma-separated, one per source variable
};

struct IntegralityDesc {
    std::vector<std::string> monic; // one per target generator, in order
};

struct BaseChangeDesc {
    std::string kind; // localization | standard_etale | zariskization
    std::string h;
    std::string g;
};

struct ParamsDesc {
    std::uint64_t n_max = 4;
    std::uint64_t depth = 3;
    std::uint64_t sample_size = 50;
    std::uint64_t seed = 1;
};

struct Description {
    enum class Kind { TowerDoc, PairDoc };
    Kind kind = Kind::TowerDoc;

    std::string name;
    std::string coeff = "Z";
    mpz_class p = 2;
    std::string zariskian = "computed";
    std::vector<LevelDesc> levels;
    std::vector<TransitionDesc> transitions;
    std::string f0, f1;
    std::vector<IntegralityDesc> integrality;
    std::optional<BaseChangeDesc> basechange;

    // pair documents
    std::vector<std::string> vars;
    std::string relations;
    std::string f;

    ParamsDesc params;
};

// Parses and fully validates a document: schema, coefficient ring, primality
// of p, and that every polynomial string parses in its declared ambient.
// Throws ParseError / Error("schema-error") with positions.
Description parse_description(const std::string& text);

Tower build_tower(const Description& d);
PrincipalPair build_pair(const Description& d);
std::vector<IntegralityCertificate> build_integrality(const Description& d);
EtaleCertificate build_basechange_cert(const Description& d);

} // namespace perftower

#endif
