// Configurable-precision floating-point kernel: complex arithmetic on MPFR
// reals, polynomial root finding, the numeric fiber-sum oracle for the exact
// pushforward, and the asymptotic-constant fit at a simple critical point.
//
// Precision is always an explicit parameter; the working precision is set
// via an RAII scope that restores the caller's value, so there is no global
// precision state observable across calls.

#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "pullback/ratfunc.hpp"

namespace pullback {

using Real = boost::multiprecision::mpfr_float;

// Sets the process default MPFR precision (in bits) for the lifetime of the
// scope and restores the previous value on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

struct Cx {
  Real re, im;
};

Cx cx(const Real& re, const Real& im);
Cx cx_from_rat(const Rat& r);
Cx cadd(const Cx& a, const Cx& b);
Cx csub(const Cx& a, const Cx& b);
Cx cmul(const Cx& a, const Cx& b);
Cx cdiv(const Cx& a, const Cx& b);
Cx cneg(const Cx& a);
Real cabs(const Cx& a);
std::string cx_to_string(const Cx& a, unsigned digits = 40);

// All roots of the polynomial with the given coefficients (low degree first,
// complex), by Durand-Kerner iteration at the given precision.
// NumericFailure if the iteration does not converge.
std::vector<Cx> croots(std::vector<Cx> coeffs, unsigned bits);

// Evaluate a rational function with rational coefficients at a complex point
// (the denominator must not vanish there).
Cx rf_eval_numeric(const RatFunc& g, const Cx& z, unsigned bits);

// Numeric oracle for the pushforward coefficient: the fiber sum
// sum_{g(w)=z0} q(w)/g'(w)^2 over the full fiber, at the given precision.
// Coefficients of g and q must be rational; z0 must be a regular value.
Cx fiber_sum_numeric(const RatFunc& g, const RatFunc& q, const Cx& z0,
                     unsigned bits);

struct AsymptoticResult {
  Cx fitted;
  Cx closed;
  Real rel_err;
};

// Behaviour of the fiber sum S(t) = sum over the two branches near a simple
// critical point c_star of 1/(prod(w-u_i) g'(w)^2) as g(w) = g(c_star) + t:
// S(t) = C/t + O(1) with C = 1/(prod(c_star-u_i)) * 1/g''(c_star).
// Fits C from the samples (two smallest t when available, else t*S(t)) and
// reports it next to the closed form with the relative error.
// NotSimpleCritical if g'(c_star) != 0, g''(c_star) = 0, or g(c_star) is not
// finite; DegenerateInput if c_star is in u or the sample list is bad;
// NumericFailure if root refinement fails.
AsymptoticResult asymptotic_constant(const RatFunc& g, const Rat& c_star,
                                     const std::vector<Rat>& u,
                                     const std::vector<Rat>& t_samples,
                                     unsigned precision_bits);

}  // namespace pullback
