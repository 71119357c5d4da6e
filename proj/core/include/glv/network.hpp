#pragma once

#include <string>

#include "glv/model.hpp"

namespace glv {

/// A three-node mass-action cycle
///
///   n X1 -> n X2 -> X3 -> X1   (rates k12, k23, k31)
///
/// where each reaction fires at its rate constant times a power-law monomial
/// x^alpha y^beta given by the node's kinetic order.  Node 3's order defaults
/// to its stoichiometric complex (0, 1), i.e. plain mass action in y.
struct ReactionNetwork {
    double n = 1.0;
    double rate12 = 1.0, rate23 = 1.0, rate31 = 1.0;
    double order1_x = 0.0, order1_y = 0.0;
    double order2_x = 0.0, order2_y = 0.0;
    double order3_x = 0.0, order3_y = 1.0;
};

/// Parse the `.glv` network description language:
///
///   network := "cycle" "{" stmt* "}"
///   stmt    := key "=" value ";"
///   key     := "n" | "k12" | "k23" | "k31" | "order1" | "order2" | "order3"
///   order   := term*        with  term := ("X" | "Y") "^" float
///
/// `#` starts a comment running to end of line; whitespace is insignificant.
/// Throws ValidationError with line:column on syntax errors, duplicate keys,
/// a species repeated within one order, missing required keys, or
/// non-positive n / rate constants.
ReactionNetwork parse_network(const std::string& text);

/// Canonical text form; parse_network(render(net)) reproduces net bit-exactly.
std::string render(const ReactionNetwork& net);

/// The induced dynamical system: writing the cycle's three firing rates as
/// power-law monomials gives
///
///   k1 = n * rate12,  k2 = n * rate23,  k3 = rate23,  k4 = rate31,
///
/// so k2 == n * k3 holds exactly (same floating-point product).
GlvSystem lower(const ReactionNetwork& net);

} // namespace glv
