#pragma once

#include <string>

#include "lag/multivector.hpp"

namespace lag {

// Grammar shared by both entry points (whitespace insignificant):
//
//   expr   := term (('+'|'-') term)*
//   term   := signed (('*'|'/') signed)*
//   signed := ('+'|'-')* power
//   power  := atom ('^' digits)?
//   atom   := digits | identifier | '(' expr ')'
//
// '*' doubles as the wedge product when frame names are in scope, '/' requires
// a nonzero constant divisor, '^' requires a scalar base and a bare natural
// literal (so "x^(-1)" is a syntax error at the parenthesis). Errors carry the
// character position (SYNTAX) or the offending name (UNKNOWN_IDENTIFIER).

// Polynomial in the base coordinates of `host`; frame names are not in scope.
Poly parse_poly(const std::string& text, const AlgebroidPresentation* host);

// Multivector over `host`; coordinate and frame names are both in scope and
// every term must reach the same wedge degree. `expected_degree` >= 0 pins the
// degree (required to give "0" a degree); -1 infers it from the terms.
Multivector parse_multivector(const std::string& text, const AlgebroidPresentation* host,
                              int expected_degree = -1);

}  // namespace lag
