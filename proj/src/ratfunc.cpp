#include "pullback/ratfunc.hpp"

namespace pullback {

RatFunc rf_make(Poly num, Poly den) {
  if (!Field::same(num.k, den.k))
    fail(ErrorKind::FieldMismatch, "numerator/denominator field mismatch");
  if (den.is_zero())
    fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) return RatFunc{poly_zero(num.k), poly_const(one(num.k))};
  Poly g = pgcd(num, den);
  if (g.deg() > 0) {
    num = pdiv_exact(num, g);
    den = pdiv_exact(den, g);
  }
  Value lc_inv = inv(den.c.back());
  return RatFunc{pscale(num, lc_inv), pscale(den, lc_inv)};
}

RatFunc rf_const(const Value& v) {
  return RatFunc{poly_const(v), poly_const(one(v.field))};
}

RatFunc rf_from_poly(Poly p) {
  FieldPtr k = p.k;
  return RatFunc{std::move(p), poly_const(one(k))};
}

RatFunc rf_x(const FieldPtr& k) {
  return RatFunc{poly_x(k), poly_const(one(k))};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  return rf_make(padd(pmul(a.num, b.den), pmul(b.num, a.den)),
                 pmul(a.den, b.den));
}

RatFunc rf_neg(const RatFunc& a) { return RatFunc{pneg(a.num), a.den}; }

RatFunc rf_sub(const RatFunc& a, const RatFunc& b) {
  return rf_add(a, rf_neg(b));
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  return rf_make(pmul(a.num, b.num), pmul(a.den, b.den));
}

RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
  if (b.num.is_zero())
    fail(ErrorKind::DivisionByZero, "division by the zero function");
  return rf_make(pmul(a.num, b.den), pmul(a.den, b.num));
}

RatFunc rf_pow(const RatFunc& a, long e) {
  if (e < 0) {
    if (a.num.is_zero())
      fail(ErrorKind::DivisionByZero, "negative power of zero");
    return rf_pow(RatFunc{a.den, a.num}, -e);  // rf_make in recursion below
  }
  RatFunc acc = rf_const(one(a.num.k));
  RatFunc base = rf_make(a.num, a.den);
  while (e > 0) {
    if (e & 1) acc = rf_mul(acc, base);
    base = rf_mul(base, base);
    e >>= 1;
  }
  return acc;
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
  return pequal(a.num, b.num) && pequal(a.den, b.den);
}

bool rf_is_zero(const RatFunc& a) { return a.num.is_zero(); }

bool rf_is_constant(const RatFunc& a) {
  return a.num.deg() <= 0 && a.den.deg() <= 0;
}

int rf_degree(const RatFunc& a) {
  return std::max(a.num.deg(), a.den.deg());
}

RatFunc rf_deriv(const RatFunc& a) {
  // (n/d)' = (n'd - nd')/d^2
  return rf_make(psub(pmul(pderiv(a.num), a.den), pmul(a.num, pderiv(a.den))),
                 pmul(a.den, a.den));
}

RatFunc rf_compose(const RatFunc& a, const RatFunc& inner) {
  // Homogenize: for P of degree <= d, P(In/Id) * Id^d is a polynomial.
  int d = std::max(a.num.deg(), a.den.deg());
  if (d < 0) d = 0;
  auto homog = [&](const Poly& p) {
    Poly acc = poly_zero(p.k);
    for (int i = 0; i <= d; ++i) {
      Value ci = (i <= p.deg()) ? p.c[i] : zero(p.k);
      if (is_zero(ci)) continue;
      Poly term = pmul(ppow(inner.num, i), ppow(inner.den, d - i));
      acc = padd(acc, pscale(term, ci));
    }
    return acc;
  };
  Poly hn = homog(a.num);
  Poly hd = homog(a.den);
  if (hd.is_zero())
    fail(ErrorKind::DivisionByZero, "composition hits a constant pole");
  return rf_make(hn, hd);
}

std::string rf_to_string(const RatFunc& a, const std::string& var) {
  if (a.den.deg() == 0 && equal(a.den.c[0], one(a.den.k)))
    return poly_to_string(a.num, var);
  return "(" + poly_to_string(a.num, var) + ")/(" +
         poly_to_string(a.den, var) + ")";
}

}  // namespace pullback
