// Exact pushforward of integrable quadratic differentials along a rational
// map, bases of the space of differentials with prescribed simple poles, the
// coderivative matrix with its exact rank, the Laurent-coefficient local
// model, and the Cauchy-like determinant.
//
// The pushforward is computed by the trace method: for g = P/Q reduced and
// F_z(w) = P(w) - z Q(w) over K(z), the coefficient of the image differential
// is the trace of multiplication by h(w) = q(w)/g'(w)^2 on K(z)[w]/(F_z).
// This is an identity of rational functions in z (the fiber sum over the d
// finite preimages of a generic z), so poles of q at infinity need no special
// coordinate flip.

#pragma once

#include <map>
#include <vector>

#include "pullback/ratfunc.hpp"

namespace pullback {

struct QuadraticDifferential {
  RatFunc coeff;            // q(z) in q(z) dz^2
  // Monic squarefree polynomial whose roots are the declared finite poles.
  // Roots need not lie in the coefficient field individually.
  Poly pole_poly;
  bool pole_at_infinity = false;
  // When constructed from an explicit point list, the points are retained
  // for reporting; empty for polynomial-specified pole sets.
  std::vector<ProjPoint> declared_points;
};

// Validating constructors. Invariants: pole_poly monic squarefree; den(coeff)
// divides pole_poly (all finite poles declared and simple); the order at
// infinity, 4 - (deg den - deg num), is <= 0, or <= 1 with the infinity flag.
QuadraticDifferential qd_make(const RatFunc& coeff, Poly pole_poly,
                              bool pole_at_infinity);
QuadraticDifferential qd_make_points(const RatFunc& coeff,
                                     const std::vector<ProjPoint>& poles);

bool qd_equal(const QuadraticDifferential& a, const QuadraticDifferential& b);
std::string qd_to_string(const QuadraticDifferential& q,
                         const std::string& var = "z");

// Basis of the integrable differentials with simple poles in `marked`
// (dimension |marked| - 3). With infinity marked and finite points u1..un in
// input order, the family 1/((z-u_1)(z-u_2)(z-u_t)) dz^2 for t = 3..n;
// without infinity, numerators z^k (k = 0..n-4) over the full product.
// TooFewPoints (|marked| < 4), DuplicatePoint.
std::vector<QuadraticDifferential> qd_basis(
    const std::vector<ProjPoint>& marked);

// As qd_basis for a pole set given by a monic squarefree polynomial: the
// family z^k / pole_poly dz^2, with k up to deg-4 (or deg-3 when infinity is
// also marked).
std::vector<QuadraticDifferential> qd_basis_poly(const Poly& pole_poly,
                                                 bool include_infinity);

// g_*(q dz^2) by the trace method. ConstantMap if g is constant;
// FieldMismatch if coefficients are in incompatible towers;
// InternalNonInvertible if the modular inversion meets a zero divisor
// (indicates a violated precondition). Post-check: the reduced result's
// poles lie among g(poles of q) and the critical values of g.
QuadraticDifferential pushforward(const RatFunc& g,
                                  const QuadraticDifferential& q);

struct CoderivativeMatrix {
  // entries[row][col]: row indexes the target basis, col the source basis.
  std::vector<std::vector<Value>> entries;
  std::vector<QuadraticDifferential> source_basis;
  std::vector<QuadraticDifferential> target_basis;
};

struct RankResult {
  int rank = 0;
  CoderivativeMatrix matrix;
};

// Exact rank of the pushforward from differentials with poles in A to those
// with poles in B, with columns expanded in the target basis by matching
// residues at the finite simple poles. AdmissibilityViolated when a critical
// value of g lies outside B, g(A) is not contained in B, or an expansion
// residue falls outside the declared poles.
RankResult coderivative_rank(const RatFunc& g,
                             const std::vector<ProjPoint>& A_pts,
                             const std::vector<ProjPoint>& B_pts);
// Variant with the source marking given as a monic squarefree polynomial
// (optionally plus infinity): needed when the individual source points are
// not in the coefficient field.
RankResult coderivative_rank_poly(const RatFunc& g, const Poly& a_poly,
                                  bool a_infinity,
                                  const std::vector<ProjPoint>& B_pts);

// Local Laurent model at a critical point of multiplicity m: the source
// coefficients a_k (k >= -1) push to b_j = a_{m(j+2)-2}/m.
std::map<int, Value> laurent_local_pushforward(int m,
                                               const std::map<int, Value>& a,
                                               int j_max);

// Determinant of [1/((w_j-u_1)(w_j-u_2)(w_j-u_t))], rows t = 3..m+2,
// columns j = 1..m, computed both by direct expansion and by the closed-form
// product formula; the two must agree and the value is nonzero.
// DegenerateInput on repeated or overlapping entries.
Value cauchy_like_det(const std::vector<Value>& w,
                      const std::vector<Value>& u);

// Monic polynomial in z whose roots are the finite critical values attained
// by finite critical points of g. ConstantMap if g is constant.
Poly critical_value_polynomial(const RatFunc& g);

// Exact-rank helper over an arbitrary tower field (Gaussian elimination).
int matrix_rank(std::vector<std::vector<Value>> m);

}  // namespace pullback
