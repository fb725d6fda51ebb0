// Dense univariate polynomials over an arbitrary tower field.
//
// Coefficients are stored low degree first with trailing zeros stripped; the
// zero polynomial has an empty coefficient vector. The variable has no
// intrinsic name — printing takes the symbol as a parameter — so the same
// engine serves K[z], K(z)[w] and the internal number-field reductions.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pullback/field.hpp"

namespace pullback {

struct Poly {
  FieldPtr k;               // coefficient field
  std::vector<Value> c;     // c[i] multiplies x^i; normalized

  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
};

Poly poly_zero(const FieldPtr& k);
Poly poly_const(const Value& v);
Poly poly_x(const FieldPtr& k);                       // the monomial x
Poly poly_from(const FieldPtr& k, std::vector<Value> coeffs);
Poly poly_monomial(const Value& coeff, int degree);

Poly padd(const Poly& a, const Poly& b);
Poly psub(const Poly& a, const Poly& b);
Poly pmul(const Poly& a, const Poly& b);
Poly pneg(const Poly& a);
Poly pscale(const Poly& a, const Value& s);
Poly ppow(const Poly& a, long e);                     // e >= 0
bool pequal(const Poly& a, const Poly& b);

// Euclidean division by a nonzero divisor: a = q*b + r, deg r < deg b.
struct DivMod {
  Poly quot, rem;
};
DivMod pdivmod(const Poly& a, const Poly& b);
// Exact division; Internal error if the remainder is nonzero.
Poly pdiv_exact(const Poly& a, const Poly& b);

Poly pderiv(const Poly& a);
Value peval(const Poly& a, const Value& x);
Poly pcompose(const Poly& a, const Poly& inner);      // a(inner(x))
Poly preverse(const Poly& a, int degree);              // x^degree * a(1/x)
Poly pshift(const Poly& a, const Value& c);            // a(x + c)

// Monic gcd (zero if both inputs are zero). May raise NonInvertible when a
// leading coefficient is a zero divisor of a reducible number-field modulus.
Poly pgcd(const Poly& a, const Poly& b);
bool psquarefree(const Poly& a);
Poly psquarefree_part(const Poly& a);                  // monic radical
Poly pmonic(const Poly& a);

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtEuclid {
  Poly g, s, t;
};
ExtEuclid pext_euclid(const Poly& a, const Poly& b);

// Inverse of a modulo m (gcd(a, m) must be 1). NonInvertible otherwise, with
// the obstructing gcd printed in the message.
Poly pinv_mod(const Poly& a, const Poly& m);

// Resultant of a and b with respect to their common variable, computed over
// the coefficient field by the subresultant-free Euclidean formula.
Value presultant(const Poly& a, const Poly& b);

// True iff b divides a.
bool pdivides(const Poly& b, const Poly& a);

// Cyclotomic polynomial Phi_n over Q (coefficient vector over Rationals).
Poly cyclotomic(int n);

// If a = s^2 for some polynomial s, returns s (normalized so its leading
// coefficient is "positive" where that makes sense); otherwise nullopt.
std::optional<Poly> ppolynomial_sqrt(const Poly& a);

std::string poly_to_string(const Poly& a, const std::string& var);

}  // namespace pullback
