// Recursive-descent parser for exact rational-function expressions.
//
// Grammar (UTF-8, no implicit multiplication):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := int | symbol | '(' expr ')'
//   int    := '-'? digits          (arbitrary precision)
//
// Symbols are the declared main variable plus the generator names of the
// coefficient field tower. Errors carry the byte offset of the offending
// token: SyntaxError for malformed input, UnknownSymbol for undeclared
// identifiers.

#pragma once

#include <string>

#include "pullback/ratfunc.hpp"

namespace pullback {

// Parse an expression into a reduced rational function over `field` with
// main variable `var`.
RatFunc parse_ratfunc(const std::string& text, const FieldPtr& field,
                      const std::string& var = "z");

// As parse_ratfunc but the result must be a polynomial (SyntaxError if the
// reduced form has a nonconstant denominator).
Poly parse_poly(const std::string& text, const FieldPtr& field,
                const std::string& var = "z");

// Parse a variable-free expression into a field element.
Value parse_value(const std::string& text, const FieldPtr& field);

}  // namespace pullback
