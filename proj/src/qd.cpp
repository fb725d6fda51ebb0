#include "pullback/qd.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace pullback {

namespace {

// Embed every coefficient of p into the (equal or deeper) field k.
Poly poly_embed(const FieldPtr& k, const Poly& p) {
  if (Field::same(k, p.k)) return p;
  std::vector<Value> c;
  c.reserve(p.c.size());
  for (const Value& v : p.c) c.push_back(embed(k, v));
  return poly_from(k, std::move(c));
}

RatFunc rf_embed(const FieldPtr& k, const RatFunc& r) {
  return rf_make(poly_embed(k, r.num), poly_embed(k, r.den));
}

// Monic product of (x - v) over the given finite values.
Poly linear_product(const FieldPtr& k, const std::vector<Value>& pts) {
  Poly out = poly_const(one(k));
  for (const Value& v : pts)
    out = pmul(out, poly_from(k, {neg(embed(k, v)), one(k)}));
  return out;
}

// An element of K(z) as a RatFunc over K.
RatFunc rff_to_ratfunc(const Value& v) {
  const FieldPtr& base = v.field->base();
  Poly num = v.num.empty() ? poly_zero(base) : poly_from(base, v.num);
  Poly den = v.den.empty() ? poly_const(one(base)) : poly_from(base, v.den);
  return rf_make(std::move(num), std::move(den));
}

// Residue of the reduced fraction r at a simple root b of its denominator;
// zero when r has no pole at b.
Value residue_at(const RatFunc& r, const Value& b) {
  Value db = peval(r.den, b);
  if (!is_zero(db)) return zero(b.field);
  Value dp = peval(pderiv(r.den), b);
  if (is_zero(dp))
    fail(ErrorKind::Internal, "higher-order pole where a simple one was expected");
  return div(peval(r.num, b), dp);
}

// Reduced row echelon form of [A | rhs]; unique solution with free columns
// pinned to zero, or nullopt when inconsistent.
std::optional<std::vector<Value>> solve_exact(
    std::vector<std::vector<Value>> a, std::vector<Value> rhs,
    const FieldPtr& k) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(a[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    std::swap(rhs[p], rhs[r]);
    Value iv = inv(a[r][c]);
    for (int j = c; j < cols; ++j) a[r][j] = mul(a[r][j], iv);
    rhs[r] = mul(rhs[r], iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      Value f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j]));
      rhs[i] = sub(rhs[i], mul(f, rhs[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!is_zero(rhs[i])) return std::nullopt;
  std::vector<Value> x(cols, zero(k));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

// Determinant by Gaussian elimination (square matrix over a field).
Value det_exact(std::vector<std::vector<Value>> a, const FieldPtr& k) {
  const int n = static_cast<int>(a.size());
  Value d = one(k);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(a[i][c])) {
        p = i;
        break;
      }
    if (p < 0) return zero(k);
    if (p != c) {
      std::swap(a[p], a[c]);
      d = neg(d);
    }
    d = mul(d, a[c][c]);
    Value iv = inv(a[c][c]);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(a[i][c])) continue;
      Value f = mul(a[i][c], iv);
      for (int j = c; j < n; ++j) a[i][j] = sub(a[i][j], mul(f, a[c][j]));
    }
  }
  return d;
}

void check_distinct_points(const std::vector<ProjPoint>& pts) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pp_equal(pts[i], pts[j]))
        fail(ErrorKind::DuplicatePoint,
             "marked points must be pairwise distinct");
}

FieldPtr points_field(const std::vector<ProjPoint>& pts) {
  std::vector<FieldPtr> fs;
  for (const ProjPoint& p : pts) fs.push_back(p.v.field);
  return field_join(fs);
}

// Is the point p equal to some member of B?
bool member_of(const ProjPoint& p, const std::vector<ProjPoint>& b) {
  for (const ProjPoint& q : b)
    if (pp_equal(p, q)) return true;
  return false;
}

// Product over finite b in B of (P - b*Q), times Q when infinity is in B:
// a finite point c maps into B under P/Q exactly when this vanishes at c.
Poly image_membership_poly(const Poly& p, const Poly& q,
                           const std::vector<Value>& b_finite, bool b_has_inf,
                           const FieldPtr& k) {
  Poly prod = b_has_inf ? q : poly_const(one(k));
  for (const Value& b : b_finite)
    prod = pmul(prod, psub(p, pscale(q, embed(k, b))));
  return prod;
}

struct TargetData {
  std::vector<QuadraticDifferential> basis;
  std::vector<Value> finite;  // finite marked points, input order
  bool has_inf = false;
  std::vector<std::vector<Value>> residues;  // [finite point][basis elt]
};

}  // namespace

QuadraticDifferential qd_make(const RatFunc& coeff, Poly pole_poly,
                              bool pole_at_infinity) {
  FieldPtr k = field_join({coeff.num.k, pole_poly.k});
  RatFunc c = rf_embed(k, coeff);
  Poly pp = poly_embed(k, pole_poly);
  if (pp.is_zero() || !equal(pp.c.back(), one(k)) || !psquarefree(pp))
    fail(ErrorKind::DegenerateInput,
         "pole polynomial must be monic and squarefree");
  if (!pdivides(c.den, pp))
    fail(ErrorKind::DegenerateInput,
         "coefficient has an undeclared or non-simple finite pole");
  if (!rf_is_zero(c)) {
    int ord_inf = 4 + c.num.deg() - c.den.deg();
    if (ord_inf > (pole_at_infinity ? 1 : 0))
      fail(ErrorKind::DegenerateInput,
           pole_at_infinity
               ? "pole at infinity has order greater than one"
               : "coefficient has an undeclared pole at infinity");
  }
  return QuadraticDifferential{std::move(c), std::move(pp), pole_at_infinity,
                               {}};
}

QuadraticDifferential qd_make_points(const RatFunc& coeff,
                                     const std::vector<ProjPoint>& poles) {
  check_distinct_points(poles);
  std::vector<FieldPtr> fs{coeff.num.k};
  for (const ProjPoint& p : poles) fs.push_back(p.v.field);
  FieldPtr k = field_join(fs);
  bool has_inf = false;
  std::vector<Value> fin;
  for (const ProjPoint& p : poles) {
    if (p.infinite)
      has_inf = true;
    else
      fin.push_back(embed(k, p.v));
  }
  QuadraticDifferential q =
      qd_make(rf_embed(k, coeff), linear_product(k, fin), has_inf);
  q.declared_points = poles;
  return q;
}

bool qd_equal(const QuadraticDifferential& a, const QuadraticDifferential& b) {
  FieldPtr k = field_join({a.coeff.num.k, b.coeff.num.k});
  return rf_equal(rf_embed(k, a.coeff), rf_embed(k, b.coeff));
}

std::string qd_to_string(const QuadraticDifferential& q,
                         const std::string& var) {
  return rf_to_string(q.coeff, var) + " d" + var + "^2";
}

std::vector<QuadraticDifferential> qd_basis(
    const std::vector<ProjPoint>& marked) {
  const int n = static_cast<int>(marked.size());
  if (n < 4)
    fail(ErrorKind::TooFewPoints, "need at least four marked points");
  check_distinct_points(marked);
  FieldPtr k = points_field(marked);
  bool has_inf = false;
  std::vector<Value> fin;
  for (const ProjPoint& p : marked) {
    if (p.infinite)
      has_inf = true;
    else
      fin.push_back(embed(k, p.v));
  }
  Poly full = linear_product(k, fin);
  std::vector<QuadraticDifferential> out;
  if (has_inf) {
    // 1/((z-u1)(z-u2)(z-ut)) dz^2 for t = 3..n-1 over the finite points.
    for (size_t t = 2; t < fin.size(); ++t) {
      Poly den = linear_product(k, {fin[0], fin[1], fin[t]});
      QuadraticDifferential q =
          qd_make(rf_make(poly_const(one(k)), den), full, true);
      q.declared_points = marked;
      out.push_back(std::move(q));
    }
  } else {
    // z^k / (full product) dz^2 for k = 0..n-4.
    for (int kk = 0; kk + 4 <= n; ++kk) {
      QuadraticDifferential q =
          qd_make(rf_make(poly_monomial(one(k), kk), full), full, false);
      q.declared_points = marked;
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::vector<QuadraticDifferential> qd_basis_poly(const Poly& pole_poly,
                                                 bool include_infinity) {
  const FieldPtr& k = pole_poly.k;
  if (pole_poly.is_zero() || !equal(pole_poly.c.back(), one(k)) ||
      !psquarefree(pole_poly))
    fail(ErrorKind::DegenerateInput,
         "pole polynomial must be monic and squarefree");
  const int n = pole_poly.deg() + (include_infinity ? 1 : 0);
  if (n < 4)
    fail(ErrorKind::TooFewPoints, "need at least four marked points");
  std::vector<QuadraticDifferential> out;
  for (int kk = 0; kk <= n - 4; ++kk) {
    int ord_inf = 4 + kk - pole_poly.deg();
    out.push_back(qd_make(rf_make(poly_monomial(one(k), kk), pole_poly),
                          pole_poly, ord_inf == 1));
  }
  return out;
}

Poly critical_value_polynomial(const RatFunc& g) {
  if (rf_is_constant(g))
    fail(ErrorKind::ConstantMap, "constant maps have no critical values");
  const FieldPtr& k = g.num.k;
  Poly w = psub(pmul(pderiv(g.num), g.den), pmul(g.num, pderiv(g.den)));
  Poly sqw = psquarefree_part(w);
  if (sqw.deg() <= 0) return poly_const(one(k));
  FieldPtr l = Field::rational_functions(k, "z");
  Poly f = psub(poly_embed(l, g.num),
                pscale(poly_embed(l, g.den), generator(l)));
  Value res = presultant(poly_embed(l, sqw), f);
  RatFunc r = rff_to_ratfunc(res);
  if (r.num.is_zero())
    fail(ErrorKind::Internal, "vanishing critical-value resultant");
  return pmonic(r.num);
}

QuadraticDifferential pushforward(const RatFunc& g,
                                  const QuadraticDifferential& q) {
  if (rf_is_constant(g))
    fail(ErrorKind::ConstantMap, "cannot push forward along a constant map");
  FieldPtr k = field_join({g.num.k, q.coeff.num.k, q.pole_poly.k});
  Poly p = poly_embed(k, g.num);
  Poly qq = poly_embed(k, g.den);
  RatFunc qc = rf_embed(k, q.coeff);
  const int d = std::max(p.deg(), qq.deg());

  // F_z(w) = P(w) - z Q(w) over L = K(z); its roots are the fiber of z.
  FieldPtr l = Field::rational_functions(k, "z");
  Value zv = generator(l);
  Poly f = psub(poly_embed(l, p), pscale(poly_embed(l, qq), zv));
  if (f.deg() != d || !psquarefree(f))
    fail(ErrorKind::Internal, "fiber polynomial is not squarefree of full degree");

  // h(w) = q(w)/g'(w)^2 = (q_num Q^4) / (q_den W^2) with W = P'Q - PQ'.
  Poly w = psub(pmul(pderiv(p), qq), pmul(p, pderiv(qq)));
  Poly hnum = poly_embed(l, pmul(qc.num, ppow(qq, 4)));
  Poly hden = poly_embed(l, pmul(qc.den, ppow(w, 2)));
  Poly hden_red = pdivmod(hden, f).rem;
  Poly hden_inv;
  try {
    hden_inv = pinv_mod(hden_red, f);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonInvertible)
      fail(ErrorKind::InternalNonInvertible,
           std::string("modular inversion met a zero divisor: ") + e.what());
    throw;
  }
  Poly hbar = pdivmod(pmul(pdivmod(hnum, f).rem, hden_inv), f).rem;

  // Power sums of the roots of F via Newton's identities:
  // p_k = sum_{i<k} (-1)^{i+1} e_i p_{k-i} + (-1)^{k+1} k e_k.
  Value lead_inv = inv(f.c[static_cast<size_t>(d)]);
  std::vector<Value> e(static_cast<size_t>(d) + 1, zero(l));
  for (int i = 1; i <= d; ++i) {
    Value a = d - i >= 0 && d - i <= f.deg() ? f.c[static_cast<size_t>(d - i)]
                                             : zero(l);
    Value v = mul(a, lead_inv);
    e[static_cast<size_t>(i)] = (i % 2 == 1) ? neg(v) : v;
  }
  std::vector<Value> ps(static_cast<size_t>(d), zero(l));
  ps[0] = from_int(l, d);
  for (int kk = 1; kk < d; ++kk) {
    Value acc = zero(l);
    for (int i = 1; i < kk; ++i) {
      Value t = mul(e[static_cast<size_t>(i)], ps[static_cast<size_t>(kk - i)]);
      acc = (i % 2 == 1) ? add(acc, t) : sub(acc, t);
    }
    Value t = mul(from_int(l, kk), e[static_cast<size_t>(kk)]);
    acc = (kk % 2 == 1) ? add(acc, t) : sub(acc, t);
    ps[static_cast<size_t>(kk)] = acc;
  }

  Value trace = zero(l);
  for (int kk = 0; kk <= hbar.deg(); ++kk)
    trace = add(trace, mul(hbar.c[static_cast<size_t>(kk)],
                           ps[static_cast<size_t>(kk)]));
  RatFunc r = rff_to_ratfunc(trace);

  // Post-check: poles of the result lie among the images of the declared
  // poles of q and the finite critical values of g.
  if (r.den.deg() >= 1) {
    Poly allowed = poly_const(one(k));
    if (!rf_is_constant(g)) {
      RatFunc gk{p, qq};
      Poly sqw = psquarefree_part(w);
      if (sqw.deg() >= 1) {
        Value res = presultant(poly_embed(l, sqw), f);
        RatFunc cv = rff_to_ratfunc(res);
        allowed = pmul(allowed, pmonic(cv.num));
      }
      Poly ap = poly_embed(k, q.pole_poly);
      if (ap.deg() >= 1) {
        Value res = presultant(poly_embed(l, ap), f);
        RatFunc img = rff_to_ratfunc(res);
        if (!img.num.is_zero()) allowed = pmul(allowed, pmonic(img.num));
      }
      if (q.pole_at_infinity) {
        ProjPoint gi = rf_eval(gk, pp_inf(k));
        if (!gi.infinite)
          allowed = pmul(allowed, poly_from(k, {neg(gi.v), one(k)}));
      }
    }
    if (!pdivides(psquarefree_part(r.den), allowed))
      fail(ErrorKind::Internal,
           "pushforward has a pole outside the expected set");
  }

  if (rf_is_zero(r))
    return QuadraticDifferential{r, poly_const(one(k)), false, {}};
  int ord_inf = 4 + r.num.deg() - r.den.deg();
  return qd_make(r, psquarefree_part(r.den), ord_inf == 1);
}

namespace {

TargetData build_target(const std::vector<ProjPoint>& b_pts,
                        const FieldPtr& k) {
  TargetData t;
  for (const ProjPoint& p : b_pts) {
    if (p.infinite)
      t.has_inf = true;
    else
      t.finite.push_back(embed(k, p.v));
  }
  std::vector<ProjPoint> emb;
  for (const ProjPoint& p : b_pts)
    emb.push_back(p.infinite ? pp_inf(k) : pp_finite(embed(k, p.v)));
  t.basis = qd_basis(emb);
  t.residues.assign(t.finite.size(),
                    std::vector<Value>(t.basis.size(), zero(k)));
  for (size_t i = 0; i < t.finite.size(); ++i)
    for (size_t j = 0; j < t.basis.size(); ++j)
      t.residues[i][j] = residue_at(t.basis[j].coeff, t.finite[i]);
  return t;
}

// Expand the pushforward image r in the target basis by matching residues at
// the finite simple poles, then certify the expansion exactly.
std::vector<Value> expand_in_target(const RatFunc& r, const TargetData& t,
                                    const FieldPtr& k) {
  if (r.den.deg() >= 1) {
    Poly btotal = linear_product(k, t.finite);
    if (!pdivides(psquarefree_part(r.den), btotal))
      fail(ErrorKind::AdmissibilityViolated,
           "image differential has a pole outside the target marking");
  }
  std::vector<Value> rhs;
  for (const Value& b : t.finite) rhs.push_back(residue_at(r, b));
  auto sol = solve_exact(t.residues, rhs, k);
  if (!sol)
    fail(ErrorKind::AdmissibilityViolated,
         "image differential is not a combination of the target basis");
  RatFunc diff = r;
  for (size_t j = 0; j < t.basis.size(); ++j)
    diff = rf_sub(diff, rf_mul(rf_const((*sol)[j]), t.basis[j].coeff));
  if (!rf_is_zero(diff))
    fail(ErrorKind::AdmissibilityViolated,
         "image differential has an undeclared pole (expansion certificate "
         "failed)");
  return *sol;
}

void check_critical_values_in(const RatFunc& g,
                              const std::vector<Value>& b_finite,
                              bool b_has_inf, const FieldPtr& k) {
  Poly w = psub(pmul(pderiv(g.num), g.den), pmul(g.num, pderiv(g.den)));
  Poly sqw = psquarefree_part(w);
  if (sqw.deg() >= 1) {
    Poly prod = image_membership_poly(g.num, g.den, b_finite, b_has_inf, k);
    if (!pdivides(sqw, prod))
      fail(ErrorKind::AdmissibilityViolated,
           "a critical value of the map lies outside the target marking");
  }
  ProjPoint inf = pp_inf(k);
  if (rf_local_mult(g, inf) >= 2) {
    ProjPoint gi = rf_eval(g, inf);
    bool ok = gi.infinite ? b_has_inf
                          : std::any_of(b_finite.begin(), b_finite.end(),
                                        [&](const Value& b) {
                                          return equal(embed(k, b),
                                                       embed(k, gi.v));
                                        });
    if (!ok)
      fail(ErrorKind::AdmissibilityViolated,
           "the critical value at infinity lies outside the target marking");
  }
}

RankResult rank_from_sources(const RatFunc& g,
                             const std::vector<QuadraticDifferential>& src,
                             const std::vector<ProjPoint>& b_pts,
                             const FieldPtr& k) {
  RankResult out;
  out.matrix.source_basis = src;
  if (b_pts.size() < 4 || src.empty()) {
    out.rank = 0;
    return out;
  }
  TargetData t = build_target(b_pts, k);
  out.matrix.target_basis = t.basis;
  out.matrix.entries.assign(t.basis.size(),
                            std::vector<Value>(src.size(), zero(k)));
  for (size_t j = 0; j < src.size(); ++j) {
    QuadraticDifferential img = pushforward(g, src[j]);
    std::vector<Value> col = expand_in_target(rf_embed(k, img.coeff), t, k);
    for (size_t i = 0; i < t.basis.size(); ++i)
      out.matrix.entries[i][j] = col[i];
  }
  out.rank = matrix_rank(out.matrix.entries);
  return out;
}

}  // namespace

int matrix_rank(std::vector<std::vector<Value>> m) {
  if (m.empty() || m[0].empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int i = rank; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[rank]);
    Value iv = inv(m[rank][c]);
    for (int i = rank + 1; i < rows; ++i) {
      if (is_zero(m[i][c])) continue;
      Value f = mul(m[i][c], iv);
      for (int j = c; j < cols; ++j) m[i][j] = sub(m[i][j], mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

RankResult coderivative_rank(const RatFunc& g,
                             const std::vector<ProjPoint>& A_pts,
                             const std::vector<ProjPoint>& B_pts) {
  if (rf_is_constant(g))
    fail(ErrorKind::ConstantMap, "constant maps have no coderivative");
  check_distinct_points(A_pts);
  check_distinct_points(B_pts);
  std::vector<FieldPtr> fs{g.num.k};
  for (const ProjPoint& p : A_pts) fs.push_back(p.v.field);
  for (const ProjPoint& p : B_pts) fs.push_back(p.v.field);
  FieldPtr k = field_join(fs);
  RatFunc gk = rf_embed(k, g);

  std::vector<Value> b_finite;
  bool b_has_inf = false;
  for (const ProjPoint& p : B_pts) {
    if (p.infinite)
      b_has_inf = true;
    else
      b_finite.push_back(embed(k, p.v));
  }
  check_critical_values_in(gk, b_finite, b_has_inf, k);
  for (const ProjPoint& a : A_pts) {
    ProjPoint img = rf_eval(gk, a.infinite ? pp_inf(k)
                                           : pp_finite(embed(k, a.v)));
    if (!member_of(img, B_pts))
      fail(ErrorKind::AdmissibilityViolated,
           "the image of a source point lies outside the target marking");
  }

  std::vector<QuadraticDifferential> src;
  if (A_pts.size() >= 4) {
    std::vector<ProjPoint> emb;
    for (const ProjPoint& p : A_pts)
      emb.push_back(p.infinite ? pp_inf(k) : pp_finite(embed(k, p.v)));
    src = qd_basis(emb);
  }
  return rank_from_sources(gk, src, B_pts, k);
}

RankResult coderivative_rank_poly(const RatFunc& g, const Poly& a_poly,
                                  bool a_infinity,
                                  const std::vector<ProjPoint>& B_pts) {
  if (rf_is_constant(g))
    fail(ErrorKind::ConstantMap, "constant maps have no coderivative");
  check_distinct_points(B_pts);
  std::vector<FieldPtr> fs{g.num.k, a_poly.k};
  for (const ProjPoint& p : B_pts) fs.push_back(p.v.field);
  FieldPtr k = field_join(fs);
  RatFunc gk = rf_embed(k, g);
  Poly ap = poly_embed(k, a_poly);
  if (ap.is_zero() || !equal(ap.c.back(), one(k)) || !psquarefree(ap))
    fail(ErrorKind::DegenerateInput,
         "source marking polynomial must be monic and squarefree");

  std::vector<Value> b_finite;
  bool b_has_inf = false;
  for (const ProjPoint& p : B_pts) {
    if (p.infinite)
      b_has_inf = true;
    else
      b_finite.push_back(embed(k, p.v));
  }
  check_critical_values_in(gk, b_finite, b_has_inf, k);
  if (ap.deg() >= 1) {
    Poly prod =
        image_membership_poly(gk.num, gk.den, b_finite, b_has_inf, k);
    if (!pdivides(ap, prod))
      fail(ErrorKind::AdmissibilityViolated,
           "the image of a source point lies outside the target marking");
  }
  if (a_infinity) {
    ProjPoint gi = rf_eval(gk, pp_inf(k));
    if (!member_of(gi, B_pts))
      fail(ErrorKind::AdmissibilityViolated,
           "the image of the source point at infinity lies outside the "
           "target marking");
  }

  std::vector<QuadraticDifferential> src;
  if (ap.deg() + (a_infinity ? 1 : 0) >= 4)
    src = qd_basis_poly(ap, a_infinity);
  return rank_from_sources(gk, src, B_pts, k);
}

std::map<int, Value> laurent_local_pushforward(int m,
                                               const std::map<int, Value>& a,
                                               int j_max) {
  if (m < 1)
    fail(ErrorKind::DegenerateInput, "local multiplicity must be at least 1");
  std::map<int, Value> out;
  if (a.empty()) return out;
  FieldPtr k = a.begin()->second.field;
  for (const auto& [idx, v] : a) {
    if (!Field::same(v.field, k))
      fail(ErrorKind::FieldMismatch,
           "Laurent coefficients live in different fields");
    if (idx < -1)
      fail(ErrorKind::DegenerateInput,
           "source differential may have at worst a simple pole");
  }
  Value mv = from_int(k, m);
  for (int j = -1; j <= j_max; ++j) {
    auto it = a.find(m * (j + 2) - 2);
    if (it != a.end()) out[j] = div(it->second, mv);
  }
  return out;
}

Value cauchy_like_det(const std::vector<Value>& w,
                      const std::vector<Value>& u) {
  const int m = static_cast<int>(w.size());
  if (m < 1) fail(ErrorKind::DegenerateInput, "need at least one w point");
  if (static_cast<int>(u.size()) < m + 2)
    fail(ErrorKind::DegenerateInput, "need at least m+2 u points");
  std::vector<FieldPtr> fs;
  for (const Value& v : w) fs.push_back(v.field);
  for (int i = 0; i < m + 2; ++i) fs.push_back(u[static_cast<size_t>(i)].field);
  FieldPtr k = field_join(fs);
  std::vector<Value> ww, uu;
  for (const Value& v : w) ww.push_back(embed(k, v));
  for (int i = 0; i < m + 2; ++i)
    uu.push_back(embed(k, u[static_cast<size_t>(i)]));
  for (int i = 0; i < m + 2; ++i)
    for (int j = i + 1; j < m + 2; ++j)
      if (equal(uu[static_cast<size_t>(i)], uu[static_cast<size_t>(j)]))
        fail(ErrorKind::DegenerateInput, "u points must be pairwise distinct");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (equal(ww[static_cast<size_t>(i)], ww[static_cast<size_t>(j)]))
        fail(ErrorKind::DegenerateInput, "w points must be pairwise distinct");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m + 2; ++j)
      if (equal(ww[static_cast<size_t>(i)], uu[static_cast<size_t>(j)]))
        fail(ErrorKind::DegenerateInput, "w and u points must not coincide");

  auto at = [](const std::vector<Value>& v, int i) -> const Value& {
    return v[static_cast<size_t>(i)];
  };
  std::vector<std::vector<Value>> mx(static_cast<size_t>(m),
                                     std::vector<Value>(static_cast<size_t>(m),
                                                        zero(k)));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      mx[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          inv(mul(mul(sub(at(ww, c), at(uu, 0)), sub(at(ww, c), at(uu, 1))),
                  sub(at(ww, c), at(uu, r + 2))));
  Value direct = det_exact(mx, k);

  // Closed-form product: prefactor / ((w_j-u_1)(w_j-u_2) over j), times
  // (w_{t-2}-w_j)(u_{j+2}-u_t) over 4<=t<=m+2, 1<=j<=t-3, divided by
  // (w_j-u_t) over 3<=t<=m+2, 1<=j<=m (indices one-based).
  Value pref = one(k);
  for (int j = 0; j < m; ++j)
    pref = mul(pref, mul(sub(at(ww, j), at(uu, 0)), sub(at(ww, j), at(uu, 1))));
  pref = inv(pref);
  Value num = one(k);
  for (int t = 4; t <= m + 2; ++t)
    for (int j = 1; j <= t - 3; ++j)
      num = mul(num, mul(sub(at(ww, t - 3), at(ww, j - 1)),
                         sub(at(uu, j + 1), at(uu, t - 1))));
  Value den = one(k);
  for (int t = 3; t <= m + 2; ++t)
    for (int j = 1; j <= m; ++j)
      den = mul(den, sub(at(ww, j - 1), at(uu, t - 1)));
  Value closed = div(mul(pref, num), den);

  if (!equal(direct, closed))
    fail(ErrorKind::Internal,
         "determinant identity failed: direct and closed form disagree");
  if (is_zero(direct))
    fail(ErrorKind::Internal, "Cauchy-like determinant vanished");
  return direct;
}

}  // namespace pullback
