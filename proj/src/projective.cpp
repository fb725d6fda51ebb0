#include "pullback/ratfunc.hpp"

namespace pullback {

namespace {

bool is_stage(const FieldPtr& sub, const FieldPtr& sup) {
  return field_is_stage(sub, sup);
}

// Deepest common-tower field among points; FieldMismatch if incompatible.
FieldPtr join_field(std::initializer_list<const ProjPoint*> pts) {
  std::vector<FieldPtr> fs;
  for (const ProjPoint* p : pts) fs.push_back(p->v.field);
  return field_join(fs);
}

// Projective coordinates (a : b); finite v = (v : 1), infinity = (1 : 0).
struct Homog {
  Value a, b;
};

Homog coords(const ProjPoint& p, const FieldPtr& k) {
  if (p.infinite) return Homog{one(k), zero(k)};
  return Homog{embed(k, p.v), one(k)};
}

// The projective "difference" bracket (ij) = a_i b_j - a_j b_i.
Value bracket(const Homog& x, const Homog& y) {
  return sub(mul(x.a, y.b), mul(y.a, x.b));
}

}  // namespace

ProjPoint pp_finite(const Value& v) { return ProjPoint{false, v}; }

ProjPoint pp_inf(const FieldPtr& k) { return ProjPoint{true, zero(k)}; }

bool pp_equal(const ProjPoint& a, const ProjPoint& b) {
  if (a.infinite != b.infinite) return false;
  if (a.infinite) return true;
  if (Field::same(a.v.field, b.v.field)) return equal(a.v, b.v);
  // Compare through the deeper tower when possible.
  if (is_stage(a.v.field, b.v.field)) return equal(embed(b.v.field, a.v), b.v);
  if (is_stage(b.v.field, a.v.field)) return equal(a.v, embed(a.v.field, b.v));
  fail(ErrorKind::FieldMismatch, "points live in incompatible fields");
}

std::string pp_to_string(const ProjPoint& a) {
  if (a.infinite) return "inf";
  return value_to_string(a.v);
}

ProjPoint rf_eval(const RatFunc& g, const ProjPoint& p) {
  const FieldPtr& k = g.num.k;
  if (p.infinite) {
    int dn = g.num.deg(), dd = g.den.deg();
    if (dn > dd) return pp_inf(k);
    if (dn < dd) return pp_finite(zero(k));
    return pp_finite(div(g.num.c.back(), g.den.c.back()));
  }
  Value x = embed(k, p.v);
  Value nv = peval(g.num, x);
  Value dv = peval(g.den, x);
  if (is_zero(dv)) {
    if (is_zero(nv))
      fail(ErrorKind::Internal, "unreduced rational function in evaluation");
    return pp_inf(k);
  }
  return pp_finite(div(nv, dv));
}

int rf_local_mult(const RatFunc& g, const ProjPoint& p) {
  if (rf_is_constant(g))
    fail(ErrorKind::DegenerateInput, "constant map has no local multiplicity");
  const FieldPtr& k = g.num.k;
  if (p.infinite) {
    // Flip the source coordinate: examine g(1/u) at u = 0.
    int d = rf_degree(g);
    RatFunc flipped = rf_make(preverse(g.num, d), preverse(g.den, d));
    return rf_local_mult(flipped, pp_finite(zero(k)));
  }
  Value x = embed(k, p.v);
  Value dv = peval(g.den, x);
  Poly vanish;  // polynomial whose vanishing order at x is the multiplicity
  if (is_zero(dv)) {
    vanish = g.den;
  } else {
    Value gv = div(peval(g.num, x), dv);
    vanish = psub(g.num, pscale(g.den, gv));
  }
  // Count the multiplicity of the root x.
  Poly lin = poly_from(k, {neg(x), one(k)});
  int mult = 0;
  while (!vanish.is_zero()) {
    DivMod dm = pdivmod(vanish, lin);
    if (!dm.rem.is_zero()) break;
    vanish = dm.quot;
    ++mult;
  }
  if (mult == 0)
    fail(ErrorKind::Internal, "vanishing order computation failed");
  return mult;
}

Value cross_ratio(const ProjPoint& z1, const ProjPoint& z2,
                  const ProjPoint& z3, const ProjPoint& z4) {
  FieldPtr k = join_field({&z1, &z2, &z3, &z4});
  const ProjPoint* pts[4] = {&z1, &z2, &z3, &z4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pp_equal(*pts[i], *pts[j]))
        fail(ErrorKind::DegenerateTuple,
             "cross ratio needs four distinct points");
  Homog h1 = coords(z1, k), h2 = coords(z2, k), h3 = coords(z3, k),
        h4 = coords(z4, k);
  // T = (z1-z2)(z4-z3) / ((z1-z3)(z4-z2)) with projective brackets; the
  // normalization satisfies T(z, 0, inf, 1) = z.
  Value numer = mul(bracket(h1, h2), bracket(h4, h3));
  Value denom = mul(bracket(h1, h3), bracket(h4, h2));
  return div(numer, denom);
}

}  // namespace pullback
