// Exact verification suite for the quartic map g(z) = -z(z^3+2)/(2z^3+1)
// realized through the elliptic curve y^2 = x^3 + 1: chord-tangent group
// law, the closed form of multiplication by -2, translation by the three
// 2-torsion points (-lambda, 0) with lambda^3 = 1, the constant cross-ratio
// of the four y-values in a fiber of the degree-four projection, and the
// semiconjugacy identities tying the curve to g via
//   h(z) = -z(z-2)^3/(2z-1)^3,  pi(x,y) = (y+1)/2,  mu(z) = (-wz-1)/(w^2 z+1)
// with w a primitive cube root of unity.
//
// All arithmetic is exact, over towers built from Q by adjoining w
// (w^2 + w + 1 = 0), a transcendental coordinate, or square roots of
// sampled values.

#pragma once

#include <vector>

#include "pullback/ratfunc.hpp"
#include "pullback/report.hpp"

namespace pullback {

// A point of y^2 = x^3 + 1: affine coordinates or the point at infinity.
struct EllipticPoint {
  bool at_infinity = false;
  Value x, y;  // meaningful iff !at_infinity
};

// Q(w) with w^2 + w + 1 = 0, generator symbol "w".
FieldPtr omega_field();

// Checked constructor: coordinates are joined into a common tower and must
// satisfy y^2 = x^3 + 1 exactly (DegenerateInput otherwise).
EllipticPoint ec_point(const Value& x, const Value& y);
EllipticPoint ec_infinity();
bool ec_equal(const EllipticPoint& p, const EllipticPoint& q);
EllipticPoint ec_neg(const EllipticPoint& p);

// Chord-tangent group law. Vertical chords (and doubling a 2-torsion point)
// give the point at infinity; the doubling branch uses slope 3x^2 / 2y.
EllipticPoint ec_add(const EllipticPoint& p, const EllipticPoint& q);

// Closed form of multiplication by -2:
//   (x, y) -> ( x(x^3 - 8) / (4(x^3 + 1)),  -(y^4 + 18y^2 - 27) / (8y^3) ),
// cross-checked on every call against the negated chord-tangent doubling
// (Internal on mismatch). TorsionDenominator for the point at infinity and
// for y = 0, where the closed form is inapplicable.
EllipticPoint mul_neg2(const EllipticPoint& p);

// Translation by the 2-torsion point (-lambda, 0) for lambda^3 = 1:
//   (a, b) -> ( (b/(a+lambda))^2 - a + lambda,  -3 lambda^2 b / (a+lambda)^2 ),
// cross-checked on every call against ec_add with (-lambda, 0) (Internal on
// mismatch). DegenerateInput unless lambda^3 = 1 and the point is affine;
// PoleAtTorsion when a = -lambda.
EllipticPoint torsion_translate(const EllipticPoint& p, const Value& lambda);

// The curve point with x = k over Q(w), adjoining s with s^2 = k^3 + 1 when
// that value is not already a square in Q(w).
EllipticPoint curve_sample(long k);

// The four y-values sharing a fiber of the degree-four projection with the
// affine point (a, b), in the fixed order
//   b,  -3b/(a+1)^2,  -3 w^2 b/(a+w)^2,  -3 w b/(a+w^2)^2
// (these are y(P + T) for T ranging over the 2-torsion subgroup).
// DegenerateInput if the point is at infinity or its coordinate field does
// not contain w; DegenerateFiber for 2-torsion points, whose fiber collapses.
std::vector<Value> fiber_y_values(const EllipticPoint& p);

// Cross-ratio of the four fiber y-values in the order above, evaluated at a
// concrete point. DegenerateFiber when two of the values coincide (every
// rational point of this curve is torsion and does collide).
Value fiber_cross_ratio_at(const EllipticPoint& p);

// The same cross-ratio computed at the generic point of the curve, over
// K = Q(w)(a)[b] / (b^2 - a^3 - 1): proves the value is the constant
// 1/(1+w) = -w independent of the point. If the primary comparison failed
// the error would list the cross-ratios of all 24 orderings (CheckFailed).
Value fiber_cross_ratio_symbolic();

// The rational maps of the semiconjugacy diagram, over a caller-chosen
// coefficient field for h and g; mu needs w and lives over Q(w).
RatFunc lattes_h(const FieldPtr& k);  // -z(z-2)^3 / (2z-1)^3
RatFunc lattes_g(const FieldPtr& k);  // -z(z^3+2) / (2z^3+1)
RatFunc lattes_mu();                  // (-wz - 1) / (w^2 z + 1)

// Verifies, as exact identities (CheckFailed naming any violation):
//   (i)  h(pi(P)) = pi([-2] P), symbolically at the generic curve point and
//        at 20 sampled points over quadratic extensions, pi(x,y) = (y+1)/2;
//   (ii) mu(h(z)) = g(mu(z)) as reduced rational functions over Q(w).
CheckReport semiconjugacy_check();

// Verifies symbolically that the four fiber y-values are exactly the
// y-coordinates of the 2-torsion translates P, P + (-1,0), P + (-w,0),
// P + (-w^2,0) of the generic point, in that order.
CheckReport fiber_description_check();

// Samples `samples` curve points x = 0, 1, 2, ... and reruns the built-in
// cross-checks: mul_neg2 against the negated doubling, and
// torsion_translate against the group law for all three lambda.
CheckReport lattes_sampling_check(int samples);

}  // namespace pullback
