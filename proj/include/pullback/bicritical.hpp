// Hurwitz correspondence for bicritical maps with two fully ramified
// critical points: the parameter curve cut out by the two case equations,
// exact fiber solving over t', the normal form g(z) = ((z+x)/(z+y))^d with
// its identity checks, and deterministic non-constancy witnesses.
//
// Cases (lambda, lambda' are d-th roots of unity, both != 1):
//   SplitFixed:  1 + x = lambda (1 + y),   y (t' + x) = lambda' x (t' + y)
//   TwoCycle:    t' + x = lambda (t' + y), y (1 + x) = lambda' x (1 + y)
// Eliminating x by the linear first equation leaves an exact quadratic in y;
// a square root of its discriminant is adjoined as a field extension when it
// is not already rational.

#pragma once

#include "pullback/ratfunc.hpp"
#include "pullback/report.hpp"

namespace pullback {

enum class BicriticalCase { SplitFixed, TwoCycle };

struct BicriticalClass {
  int d = 2;
  int lambda_exp = 1;        // lambda = zeta_d ^ lambda_exp
  int lambda_prime_exp = 1;  // lambda' = zeta_d ^ lambda_prime_exp
  BicriticalCase kase = BicriticalCase::SplitFixed;
};

struct CurvePoint {
  Value x, y, t_prime;
};

// The cyclotomic field Q(zeta_d) with generator symbol "w".
FieldPtr cyclotomic_field(int d);

// All curve points over the given t'. Generically two; solutions violating
// x != 0, y != 0, (x/y)^d != 1 are filtered out. DegenerateParameter for
// t' in {0,1}; TrivialRoot when lambda or lambda' equals 1.
std::vector<CurvePoint> curve_fiber(const BicriticalClass& c,
                                    const Value& t_prime);

// t = (x/y)^d.
Value map_t(const CurvePoint& pt, int d);

// Normal form g(z) = ((z+x)/(z+y))^d and its exact identities: fully
// ramified critical points -x -> 0 and -y -> infinity, g(inf) = 1,
// g(0) = t, and the case identities (SplitFixed: g(1) = 1 and g(t') = t;
// TwoCycle: g(t') = 1 and g(1) = t). CheckFailed names the first violation.
RatFunc bicritical_normal_form(const CurvePoint& pt, int d);
CheckReport normal_form_check(const CurvePoint& pt, const BicriticalClass& c);

struct BicriticalWitness {
  Value tprime_a, tprime_b;  // two parameters with nonempty fibers
  std::vector<CurvePoint> fiber_a, fiber_b;
  std::vector<Value> t_values;            // images t of the size-2 fiber
  std::vector<std::string> normal_forms;  // printed maps of the size-2 fiber
  std::vector<std::string> notes;         // field / reducibility remarks
};

// Deterministic witness that the parameter map t' -> class is non-constant
// and generically two-to-one: scans t' = -3, -2, 2, 3, -4, 4, ... skipping
// {0,1} and any degenerate parameters until two nonempty fibers, one of
// size 2, are found, with every point passing normal_form_check.
// TrivialRoot for lambda or lambda' = 1; WitnessSearchFailed if the scan is
// exhausted (does not happen for valid classes).
BicriticalWitness nonconstancy_witness(const BicriticalClass& c);

}  // namespace pullback
