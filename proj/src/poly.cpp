#include "pullback/poly.hpp"

#include <map>

namespace pullback {

namespace {

void normalize(Poly& p) {
  while (!p.c.empty() && is_zero(p.c.back())) p.c.pop_back();
}

void require_same_field(const Poly& a, const Poly& b) {
  if (!Field::same(a.k, b.k))
    fail(ErrorKind::FieldMismatch, "polynomials over different fields");
}

}  // namespace

Poly poly_zero(const FieldPtr& k) { return Poly{k, {}}; }

Poly poly_const(const Value& v) {
  Poly p{v.field, {v}};
  normalize(p);
  return p;
}

Poly poly_x(const FieldPtr& k) { return Poly{k, {zero(k), one(k)}}; }

Poly poly_from(const FieldPtr& k, std::vector<Value> coeffs) {
  for (auto& c : coeffs)
    if (!Field::same(c.field, k))
      fail(ErrorKind::FieldMismatch, "coefficient outside the declared field");
  Poly p{k, std::move(coeffs)};
  normalize(p);
  return p;
}

Poly poly_monomial(const Value& coeff, int degree) {
  if (degree < 0) fail(ErrorKind::Internal, "negative monomial degree");
  Poly p{coeff.field, {}};
  if (is_zero(coeff)) return p;
  p.c.assign(degree + 1, zero(coeff.field));
  p.c[degree] = coeff;
  return p;
}

Poly padd(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  Poly out{a.k, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  out.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Value ai = i < a.c.size() ? a.c[i] : zero(a.k);
    Value bi = i < b.c.size() ? b.c[i] : zero(a.k);
    out.c.push_back(add(ai, bi));
  }
  normalize(out);
  return out;
}

Poly pneg(const Poly& a) {
  Poly out = a;
  for (auto& c : out.c) c = neg(c);
  return out;
}

Poly psub(const Poly& a, const Poly& b) { return padd(a, pneg(b)); }

Poly pmul(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return poly_zero(a.k);
  Poly out{a.k, std::vector<Value>(a.c.size() + b.c.size() - 1, zero(a.k))};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = add(out.c[i + j], mul(a.c[i], b.c[j]));
  }
  normalize(out);
  return out;
}

Poly pscale(const Poly& a, const Value& s) {
  Poly out = a;
  for (auto& c : out.c) c = mul(c, s);
  normalize(out);
  return out;
}

Poly ppow(const Poly& a, long e) {
  if (e < 0) fail(ErrorKind::Internal, "negative polynomial power");
  Poly acc = poly_const(one(a.k));
  Poly base = a;
  while (e > 0) {
    if (e & 1) acc = pmul(acc, base);
    base = pmul(base, base);
    e >>= 1;
  }
  return acc;
}

bool pequal(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!equal(a.c[i], b.c[i])) return false;
  return true;
}

DivMod pdivmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly rem = a;
  Poly quot = poly_zero(a.k);
  Value lcb_inv = inv(b.c.back());
  while (!rem.is_zero() && rem.deg() >= b.deg()) {
    int shift = rem.deg() - b.deg();
    Value coef = mul(rem.c.back(), lcb_inv);
    quot = padd(quot, poly_monomial(coef, shift));
    // rem -= coef * x^shift * b
    Poly sub_term = pmul(poly_monomial(coef, shift), b);
    rem = psub(rem, sub_term);
  }
  return DivMod{quot, rem};
}

Poly pdiv_exact(const Poly& a, const Poly& b) {
  DivMod dm = pdivmod(a, b);
  if (!dm.rem.is_zero())
    fail(ErrorKind::Internal, "inexact polynomial division");
  return dm.quot;
}

bool pdivides(const Poly& b, const Poly& a) {
  if (b.is_zero()) return a.is_zero();
  return pdivmod(a, b).rem.is_zero();
}

Poly pderiv(const Poly& a) {
  Poly out{a.k, {}};
  for (size_t i = 1; i < a.c.size(); ++i)
    out.c.push_back(mul(a.c[i], from_int(a.k, static_cast<long>(i))));
  normalize(out);
  return out;
}

Value peval(const Poly& a, const Value& x) {
  Value acc = zero(a.k);
  for (size_t i = a.c.size(); i-- > 0;) acc = add(mul(acc, x), a.c[i]);
  return acc;
}

Poly pcompose(const Poly& a, const Poly& inner) {
  Poly acc = poly_zero(a.k);
  for (size_t i = a.c.size(); i-- > 0;)
    acc = padd(pmul(acc, inner), poly_const(a.c[i]));
  return acc;
}

Poly preverse(const Poly& a, int degree) {
  if (a.deg() > degree) fail(ErrorKind::Internal, "reverse degree too small");
  std::vector<Value> c(degree + 1, zero(a.k));
  for (size_t i = 0; i < a.c.size(); ++i) c[degree - i] = a.c[i];
  Poly out{a.k, std::move(c)};
  normalize(out);
  return out;
}

Poly pshift(const Poly& a, const Value& c) {
  Poly inner{a.k, {c, one(a.k)}};
  return pcompose(a, inner);
}

Poly pmonic(const Poly& a) {
  if (a.is_zero()) return a;
  return pscale(a, inv(a.c.back()));
}

namespace {

// Rational-coefficient gcds run on integer coefficient vectors: clear
// denominators once, then keep every pseudo-remainder primitive (integer
// content stripped). This avoids the per-step rational reductions that
// dominate when these polynomials carry large coefficients.

std::vector<Int> int_coeffs(const Poly& p) {
  Int l = 1;
  for (const Value& v : p.c) l = lcm(l, Int(denominator(v.rat)));
  std::vector<Int> out(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Rat s = p.c[i].rat * Rat(l);
    out[i] = numerator(s);
  }
  return out;
}

void int_primitive(std::vector<Int>& a) {
  Int g = 0;
  for (const Int& x : a) g = gcd(g, x);
  if (g > 1)
    for (Int& x : a) x /= g;
}

// Pseudo-remainder of a by b: scales a by lc(b) before each cancellation so
// the arithmetic stays in Z.
std::vector<Int> int_prem(std::vector<Int> a, const std::vector<Int>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Int& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db) {
    Int la = a.back();
    for (Int& x : a) x *= lb;
    const int shift = static_cast<int>(a.size()) - 1 - db;
    for (int j = 0; j < db; ++j) a[shift + j] -= la * b[j];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

Poly pgcd_rationals(const Poly& a, const Poly& b) {
  if (a.is_zero()) return pmonic(b);
  if (b.is_zero()) return pmonic(a);
  std::vector<Int> x = int_coeffs(a), y = int_coeffs(b);
  int_primitive(x);
  int_primitive(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    std::vector<Int> r = int_prem(std::move(x), y);
    int_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Value> c(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    c[i] = from_rat(a.k, Rat(x[i], x.back()));
  return Poly{a.k, std::move(c)};
}

}  // namespace

Poly pgcd(const Poly& a, const Poly& b) {
  if (a.k->kind() == Field::Kind::Rationals) return pgcd_rationals(a, b);
  // Each remainder is normalized to monic: over Q (and towers over Q) the
  // raw remainder sequence suffers exponential coefficient growth, while the
  // monic sequence stays polynomially sized. The gcd is unchanged (units).
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = pdivmod(x, y).rem;
    x = y;
    y = r.is_zero() ? r : pmonic(r);
  }
  return pmonic(x);
}

bool psquarefree(const Poly& a) {
  if (a.deg() <= 0) return true;
  return pgcd(a, pderiv(a)).deg() == 0;
}

Poly psquarefree_part(const Poly& a) {
  if (a.deg() <= 0) return pmonic(a);
  Poly g = pgcd(a, pderiv(a));
  if (g.deg() == 0) return pmonic(a);
  return pmonic(pdiv_exact(a, g));
}

ExtEuclid pext_euclid(const Poly& a, const Poly& b) {
  // Invariants: s*a + t*b = r for each (r, s, t) row.
  Poly r0 = a, r1 = b;
  Poly s0 = poly_const(one(a.k)), s1 = poly_zero(a.k);
  Poly t0 = poly_zero(a.k), t1 = poly_const(one(a.k));
  while (!r1.is_zero()) {
    DivMod dm = pdivmod(r0, r1);
    Poly r2 = dm.rem;
    Poly s2 = psub(s0, pmul(dm.quot, s1));
    Poly t2 = psub(t0, pmul(dm.quot, t1));
    if (!r2.is_zero()) {
      // Normalize the new row to a monic remainder; scaling a full row
      // preserves s*a + t*b = r and tames coefficient growth.
      Value lc_inv = inv(r2.c.back());
      r2 = pscale(r2, lc_inv);
      s2 = pscale(s2, lc_inv);
      t2 = pscale(t2, lc_inv);
    }
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.is_zero()) return ExtEuclid{r0, s0, t0};
  Value lc_inv = inv(r0.c.back());
  return ExtEuclid{pscale(r0, lc_inv), pscale(s0, lc_inv), pscale(t0, lc_inv)};
}

Poly pinv_mod(const Poly& a, const Poly& m) {
  Poly ar = pdivmod(a, m).rem;
  if (ar.is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero residue");
  ExtEuclid ee = pext_euclid(ar, m);
  if (ee.g.deg() != 0)
    fail(ErrorKind::NonInvertible,
         "zero divisor: gcd with modulus is " + poly_to_string(ee.g, "x"));
  return pdivmod(ee.s, m).rem;
}

Value presultant(const Poly& a, const Poly& b) {
  const FieldPtr& k = a.k;
  if (a.is_zero() || b.is_zero())
    return (a.deg() <= 0 && b.deg() <= 0) ? one(k) : zero(k);
  if (a.deg() < b.deg()) {
    Value r = presultant(b, a);
    if ((a.deg() * b.deg()) % 2 != 0) r = neg(r);
    return r;
  }
  if (b.deg() == 0) return pow_int(b.c[0], a.deg());
  Poly r = pdivmod(a, b).rem;
  if (r.is_zero()) return zero(k);
  // Recurse on the monic remainder to keep coefficients small;
  // res(b, c*rm) = c^deg(b) * res(b, rm) restores the scale.
  Value lc = r.c.back();
  Poly rm = pscale(r, inv(lc));
  Value tail = mul(pow_int(lc, b.deg()), presultant(b, rm));
  Value factor = pow_int(b.c.back(), a.deg() - r.deg());
  Value out = mul(factor, tail);
  if ((a.deg() * b.deg()) % 2 != 0) out = neg(out);
  return out;
}

Poly cyclotomic(int n) {
  static std::map<int, Poly> cache;
  if (n < 1) fail(ErrorKind::Internal, "cyclotomic index must be >= 1");
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  FieldPtr q = Field::rationals();
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  std::vector<Value> xn(n + 1, zero(q));
  xn[0] = from_int(q, -1);
  xn[n] = one(q);
  Poly num = poly_from(q, xn);
  Poly den = poly_const(one(q));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) den = pmul(den, cyclotomic(d));
  Poly phi = pdiv_exact(num, den);
  cache[n] = phi;
  return phi;
}

std::optional<Poly> ppolynomial_sqrt(const Poly& a) {
  if (a.is_zero()) return poly_zero(a.k);
  if (a.deg() % 2 != 0) return std::nullopt;
  // Split off the leading coefficient and take a monic square root by
  // matching coefficients from the top degree downward.
  Value lc = a.c.back();
  Poly m = pmonic(a);
  int half = m.deg() / 2;
  std::vector<Value> s(half + 1, zero(a.k));
  s[half] = one(a.k);
  Value two = from_int(a.k, 2);
  for (int i = half - 1; i >= 0; --i) {
    // Coefficient of x^(half+i) in s^2 must equal m[half+i]:
    // 2*s[i] + sum_{j=i+1..half-1} s[j]*s[half+i-j] = m[half+i].
    Value acc = zero(a.k);
    for (int j = i + 1; j <= half - 1; ++j) {
      int other = half + i - j;
      if (other > j || other < 0) continue;
      Value prod = mul(s[j], s[other]);
      if (other == j)
        acc = add(acc, prod);
      else
        acc = add(acc, mul(two, prod));
    }
    Value target = (half + i <= m.deg()) ? m.c[half + i] : zero(a.k);
    s[i] = div(sub(target, acc), two);
  }
  Poly cand = poly_from(a.k, s);
  if (!pequal(pmul(cand, cand), m)) return std::nullopt;
  // The full polynomial is a square iff lc is. Detection is sound but only
  // complete for rational leading coefficients: non-rational square leading
  // coefficients are reported as non-squares.
  if (a.k->kind() == Field::Kind::Rationals ||
      equal(lc, one(a.k))) {
    Rat lr = 1;
    if (a.k->kind() == Field::Kind::Rationals) lr = a.c.back().rat;
    if (lr < 0) return std::nullopt;
    Int num_root = boost::multiprecision::sqrt(numerator(lr));
    Int den_root = boost::multiprecision::sqrt(denominator(lr));
    if (num_root * num_root != numerator(lr) ||
        den_root * den_root != denominator(lr))
      return std::nullopt;
    Value root = from_rat(a.k, Rat(num_root, den_root));
    return pscale(cand, root);
  }
  return std::nullopt;
}

// --- printing ---------------------------------------------------------------

namespace {

// Does the canonical printed form of v begin with a minus sign?
bool negative_head(const Value& v) {
  switch (v.field->kind()) {
    case Field::Kind::Rationals:
      return v.rat < 0;
    case Field::Kind::Number:
      return !v.num.empty() && negative_head(v.num.back());
    case Field::Kind::RationalFunctions:
      return !v.num.empty() && negative_head(v.num.back());
  }
  return false;
}

bool is_plain_rational(const Value& v, Rat* out) {
  switch (v.field->kind()) {
    case Field::Kind::Rationals:
      *out = v.rat;
      return true;
    case Field::Kind::Number:
    case Field::Kind::RationalFunctions: {
      if (v.num.empty()) {
        *out = 0;
        return true;
      }
      if (v.num.size() != 1) return false;
      if (v.field->kind() == Field::Kind::RationalFunctions &&
          v.den.size() != 1)
        return false;
      return is_plain_rational(v.num[0], out);
    }
  }
  return false;
}

std::string power_str(const std::string& var, int k) {
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

// One term c*var^k with c regarded as "positive-headed" by the caller (the
// sign, if any, has been folded into the surrounding +/- join). Rationals
// may still carry a literal minus when the caller asked for the signed form.
std::string term_str(const Value& c, int k, const std::string& var) {
  Rat r;
  bool plain = is_plain_rational(c, &r);
  if (k == 0) {
    if (plain) return rat_to_string(r);
    return "(" + value_to_string(c) + ")";
  }
  if (plain) {
    if (r == 1) return power_str(var, k);
    return rat_to_string(r) + "*" + power_str(var, k);
  }
  return "(" + value_to_string(c) + ")*" + power_str(var, k);
}

}  // namespace

std::string poly_to_string(const Poly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = a.deg(); i >= 0; --i) {
    const Value& c = a.c[i];
    if (is_zero(c)) continue;
    if (first) {
      // Leading term: rationals may print a literal minus; other negative
      // heads are safe inside the parenthesized coefficient atom.
      out += term_str(c, i, var);
      first = false;
      continue;
    }
    if (negative_head(c)) {
      out += "-" + term_str(neg(c), i, var);
    } else {
      out += "+" + term_str(c, i, var);
    }
  }
  return out;
}

}  // namespace pullback
