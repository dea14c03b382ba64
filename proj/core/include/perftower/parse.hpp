#ifndef PERFTOWER_PARSE_HPP
#define PERFTOWER_PARSE_HPP

#include "perftower/poly.hpp"

#include <string>
#include <vector>

namespace perftower {

// Polynomial grammar: identifiers are variables, '^' powers, '*' optional
// (juxtaposition multiplies), integer literals, parentheses, '+'/'-'.
// Examples: "x^4 - 2", "p*y", "3(x+1)^2".
Polynomial parse_polynomial(const std::string& text, const AmbientPtr& amb);

// Comma-separated list of polynomials; empty string means no entries.
std::vector<Polynomial> parse_polynomial_list(const std::string& text, const AmbientPtr& amb);

// Coefficient ring names: "Z", "Z/8", "F2" (prime checked).
CoefficientRing parse_coeff_ring(const std::string& text);

// Inline quotient-ring syntax used by the CLI, e.g. "Z[y]/(3y,y^2)" or
// "F2[x,y]". Returns the ambient and the relation list.
struct RingSpec {
    AmbientPtr ambient;
    std::vector<Polynomial> relations;
};
RingSpec parse_ring_spec(const std::string& text);

} // namespace perftower

#endif
