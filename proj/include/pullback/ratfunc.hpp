// Rational functions over a tower field, plus points of the projective line.
//
// A RatFunc is a reduced fraction num/den of polynomials over the same field
// with den monic and nonzero. Projective points are either finite field
// values or the point at infinity; evaluation and composition handle poles
// projectively.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pullback/poly.hpp"

namespace pullback {

struct RatFunc {
  Poly num, den;
};

// Reduce num/den (gcd cancelled, den made monic). DivisionByZero if den = 0.
RatFunc rf_make(Poly num, Poly den);
RatFunc rf_const(const Value& v);
RatFunc rf_from_poly(Poly p);
RatFunc rf_x(const FieldPtr& k);

RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_div(const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const RatFunc& a);
RatFunc rf_pow(const RatFunc& a, long e);
bool rf_equal(const RatFunc& a, const RatFunc& b);
bool rf_is_zero(const RatFunc& a);
bool rf_is_constant(const RatFunc& a);

RatFunc rf_deriv(const RatFunc& a);
// a(inner): substitution of a rational function into another.
RatFunc rf_compose(const RatFunc& a, const RatFunc& inner);

// Mapping degree max(deg num, deg den); 0 for constants.
int rf_degree(const RatFunc& a);

std::string rf_to_string(const RatFunc& a, const std::string& var);

// --- projective line --------------------------------------------------------

struct ProjPoint {
  bool infinite = false;
  Value v;  // meaningful iff !infinite
};

ProjPoint pp_finite(const Value& v);
ProjPoint pp_inf(const FieldPtr& k);
bool pp_equal(const ProjPoint& a, const ProjPoint& b);
std::string pp_to_string(const ProjPoint& a);

// Evaluate g at a projective point (poles map to infinity). ConstantMap-free:
// works for any nonzero-denominator RatFunc.
ProjPoint rf_eval(const RatFunc& g, const ProjPoint& p);

// Local mapping multiplicity of g at p (1 = regular, >= 2 = critical).
// DegenerateInput if g is constant.
int rf_local_mult(const RatFunc& g, const ProjPoint& p);

// Cross ratio T(z1,z2,z3,z4) normalized so T(z,0,inf,1) = z, i.e. the image
// of z1 under the Moebius map sending (z2,z3,z4) to (0,inf,1):
// T = (z1-z2)(z4-z3) / ((z1-z3)(z4-z2)), evaluated projectively so infinite
// entries are legal. DegenerateTuple if fewer than four distinct points.
Value cross_ratio(const ProjPoint& z1, const ProjPoint& z2,
                  const ProjPoint& z3, const ProjPoint& z4);

}  // namespace pullback
