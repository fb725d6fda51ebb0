#include "pullback/lattes.hpp"

#include <algorithm>
#include <string>

#include "pullback/error.hpp"

namespace pullback {

namespace {

// The cube root of unity inside a tower containing Q(w); DegenerateInput
// when the tower has no such stage.
Value omega_in(const FieldPtr& k) {
  if (!field_is_stage(omega_field(), k))
    fail(ErrorKind::DegenerateInput,
         "coordinate field does not contain a primitive cube root of unity");
  return embed(k, generator(omega_field()));
}

bool on_curve(const Value& x, const Value& y) {
  return is_zero(sub(mul(y, y), add(pow_int(x, 3), one(x.field))));
}

// The generic point of the curve: coordinates (a, b) in the tower
// K = Q(w)(a)[b] / (b^2 - a^3 - 1).
struct GenericPoint {
  FieldPtr tower;
  EllipticPoint p;
};

GenericPoint generic_point() {
  FieldPtr k0 = omega_field();
  FieldPtr ka = Field::rational_functions(k0, "a");
  Value a = generator(ka);
  Value m0 = neg(add(pow_int(a, 3), one(ka)));
  FieldPtr kb = Field::number(ka, {m0, zero(ka), one(ka)}, "b");
  GenericPoint g;
  g.tower = kb;
  g.p = ec_point(embed(kb, a), generator(kb));
  return g;
}

Value half_shift(const Value& y) {  // (y + 1) / 2, the projection to the line
  return div(add(y, one(y.field)), from_int(y.field, 2));
}

// h(pi(P)) = pi([-2] P) at one affine point with y != 0.
bool pi_identity_holds(const EllipticPoint& p) {
  const FieldPtr& k = p.x.field;
  RatFunc h = lattes_h(k);
  ProjPoint lhs = rf_eval(h, pp_finite(half_shift(p.y)));
  Value rhs = half_shift(mul_neg2(p).y);
  return !lhs.infinite && equal(lhs.v, rhs);
}

}  // namespace

FieldPtr omega_field() {
  FieldPtr q = Field::rationals();
  return Field::number(q, {one(q), one(q), one(q)}, "w");
}

EllipticPoint ec_point(const Value& x, const Value& y) {
  FieldPtr j = field_join({x.field, y.field});
  EllipticPoint p;
  p.x = embed(j, x);
  p.y = embed(j, y);
  if (!on_curve(p.x, p.y))
    fail(ErrorKind::DegenerateInput, "point is not on y^2 = x^3 + 1");
  return p;
}

EllipticPoint ec_infinity() {
  EllipticPoint p;
  p.at_infinity = true;
  return p;
}

bool ec_equal(const EllipticPoint& p, const EllipticPoint& q) {
  if (p.at_infinity || q.at_infinity) return p.at_infinity && q.at_infinity;
  FieldPtr j = field_join({p.x.field, q.x.field});
  return equal(embed(j, p.x), embed(j, q.x)) &&
         equal(embed(j, p.y), embed(j, q.y));
}

EllipticPoint ec_neg(const EllipticPoint& p) {
  if (p.at_infinity) return p;
  EllipticPoint r = p;
  r.y = neg(p.y);
  return r;
}

EllipticPoint ec_add(const EllipticPoint& p, const EllipticPoint& q) {
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;
  FieldPtr j = field_join({p.x.field, q.x.field});
  Value x1 = embed(j, p.x), y1 = embed(j, p.y);
  Value x2 = embed(j, q.x), y2 = embed(j, q.y);
  Value m;
  if (equal(x1, x2)) {
    if (equal(y1, neg(y2))) return ec_infinity();
    m = div(mul(from_int(j, 3), mul(x1, x1)), mul(from_int(j, 2), y1));
  } else {
    m = div(sub(y2, y1), sub(x2, x1));
  }
  EllipticPoint r;
  r.x = sub(sub(mul(m, m), x1), x2);
  r.y = sub(mul(m, sub(x1, r.x)), y1);
  return r;
}

EllipticPoint mul_neg2(const EllipticPoint& p) {
  if (p.at_infinity)
    fail(ErrorKind::TorsionDenominator,
         "closed form undefined at the point at infinity");
  if (is_zero(p.y))
    fail(ErrorKind::TorsionDenominator,
         "closed form undefined at 2-torsion (y = 0)");
  const FieldPtr& k = p.x.field;
  Value xc = pow_int(p.x, 3);
  Value ys = mul(p.y, p.y);
  EllipticPoint r;
  r.x = div(mul(p.x, sub(xc, from_int(k, 8))),
            mul(from_int(k, 4), add(xc, one(k))));
  r.y = neg(div(add(mul(ys, ys), sub(mul(from_int(k, 18), ys), from_int(k, 27))),
                mul(from_int(k, 8), pow_int(p.y, 3))));
  if (!ec_equal(r, ec_neg(ec_add(p, p))))
    fail(ErrorKind::Internal,
         "mul_neg2 closed form disagrees with the group law");
  return r;
}

EllipticPoint torsion_translate(const EllipticPoint& p, const Value& lambda) {
  if (p.at_infinity)
    fail(ErrorKind::DegenerateInput, "translation needs an affine point");
  FieldPtr j = field_join({p.x.field, lambda.field});
  Value a = embed(j, p.x), b = embed(j, p.y), lam = embed(j, lambda);
  if (!equal(pow_int(lam, 3), one(j)))
    fail(ErrorKind::DegenerateInput, "lambda must satisfy lambda^3 = 1");
  if (equal(a, neg(lam)))
    fail(ErrorKind::PoleAtTorsion, "translation formula has a pole at a = -lambda");
  Value t = div(b, add(a, lam));
  EllipticPoint r;
  r.x = add(sub(mul(t, t), a), lam);
  r.y = neg(div(mul(from_int(j, 3), mul(mul(lam, lam), b)),
                pow_int(add(a, lam), 2)));
  EllipticPoint base;
  base.x = a;
  base.y = b;
  if (!ec_equal(r, ec_add(base, ec_point(neg(lam), zero(j)))))
    fail(ErrorKind::Internal,
         "torsion translate disagrees with the group law");
  return r;
}

EllipticPoint curve_sample(long k) {
  FieldPtr k0 = omega_field();
  Rat c = Rat(k) * k * k + 1;
  if (auto b = rat_sqrt(c))
    return ec_point(from_rat(k0, k), from_rat(k0, *b));
  if (c < 0) {
    // c = -3 t^2 is the square of t(1 + 2w) in Q(w) since (1 + 2w)^2 = -3.
    if (auto t = rat_sqrt(-c / 3)) {
      Value w = generator(k0);
      Value b = mul(from_rat(k0, *t),
                    add(one(k0), mul(from_int(k0, 2), w)));
      return ec_point(from_rat(k0, k), b);
    }
  }
  FieldPtr ks = Field::number(k0, {from_rat(k0, -c), zero(k0), one(k0)}, "s");
  return ec_point(from_rat(ks, k), generator(ks));
}

std::vector<Value> fiber_y_values(const EllipticPoint& p) {
  if (p.at_infinity)
    fail(ErrorKind::DegenerateInput, "fiber entries need an affine point");
  if (is_zero(p.y))
    fail(ErrorKind::DegenerateFiber,
         "2-torsion point: all fiber values collapse to 0");
  const FieldPtr& k = p.x.field;
  Value w = omega_in(k);
  Value w2 = mul(w, w);
  auto entry = [&](const Value& lam_sq, const Value& lam) {
    return neg(div(mul(from_int(k, 3), mul(lam_sq, p.y)),
                   pow_int(add(p.x, lam), 2)));
  };
  return {p.y, entry(one(k), one(k)), entry(w2, w), entry(w, w2)};
}

Value fiber_cross_ratio_at(const EllipticPoint& p) {
  std::vector<Value> v = fiber_y_values(p);
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (equal(v[i], v[j]))
        fail(ErrorKind::DegenerateFiber,
             "fiber values " + std::to_string(i + 1) + " and " +
                 std::to_string(j + 1) + " coincide");
  return cross_ratio(pp_finite(v[0]), pp_finite(v[1]), pp_finite(v[2]),
                     pp_finite(v[3]));
}

Value fiber_cross_ratio_symbolic() {
  GenericPoint gp = generic_point();
  Value cr = fiber_cross_ratio_at(gp.p);
  Value w = omega_in(gp.tower);
  Value expected = div(one(gp.tower), add(one(gp.tower), w));
  if (!equal(cr, expected)) {
    std::vector<Value> v = fiber_y_values(gp.p);
    std::vector<int> idx = {0, 1, 2, 3};
    std::string orbit;
    do {
      Value c = cross_ratio(pp_finite(v[idx[0]]), pp_finite(v[idx[1]]),
                            pp_finite(v[idx[2]]), pp_finite(v[idx[3]]));
      if (!orbit.empty()) orbit += "; ";
      orbit += value_to_string(c);
    } while (std::next_permutation(idx.begin(), idx.end()));
    fail(ErrorKind::CheckFailed,
         "generic fiber cross-ratio is not 1/(1+w); orbit under reordering: " +
             orbit);
  }
  return cr;
}

RatFunc lattes_h(const FieldPtr& k) {
  Poly z = poly_x(k);
  Poly num = pneg(pmul(z, ppow(psub(z, poly_const(from_int(k, 2))), 3)));
  Poly den = ppow(psub(pscale(z, from_int(k, 2)), poly_const(one(k))), 3);
  return rf_make(num, den);
}

RatFunc lattes_g(const FieldPtr& k) {
  Poly z = poly_x(k);
  Poly num = pneg(pmul(z, padd(ppow(z, 3), poly_const(from_int(k, 2)))));
  Poly den = padd(pscale(ppow(z, 3), from_int(k, 2)), poly_const(one(k)));
  return rf_make(num, den);
}

RatFunc lattes_mu() {
  FieldPtr k0 = omega_field();
  Value w = generator(k0);
  Poly num = poly_from(k0, {neg(one(k0)), neg(w)});
  Poly den = poly_from(k0, {one(k0), mul(w, w)});
  return rf_make(num, den);
}

CheckReport semiconjugacy_check() {
  CheckReport rep;
  FieldPtr k0 = omega_field();
  RatFunc mu = lattes_mu();
  if (!rf_equal(rf_compose(mu, lattes_h(k0)), rf_compose(lattes_g(k0), mu)))
    fail(ErrorKind::CheckFailed, "mu(h(z)) != g(mu(z)) over Q(w)");
  rep.passed.push_back(
      "mu(h(z)) = g(mu(z)) as reduced rational functions over Q(w)");

  GenericPoint gp = generic_point();
  if (!pi_identity_holds(gp.p))
    fail(ErrorKind::CheckFailed,
         "h(pi(P)) != pi([-2]P) at the generic curve point");
  rep.passed.push_back(
      "h(pi(P)) = pi([-2]P) symbolically over Q(w)(a)[b]/(b^2 - a^3 - 1)");

  int done = 0;
  for (long k = 0; done < 20; ++k) {
    EllipticPoint p = curve_sample(k);
    if (is_zero(p.y)) continue;
    if (!pi_identity_holds(p))
      fail(ErrorKind::CheckFailed,
           "h(pi(P)) != pi([-2]P) at the sampled point with x = " +
               std::to_string(k));
    ++done;
  }
  rep.passed.push_back("h(pi(P)) = pi([-2]P) at 20 sampled curve points");
  return rep;
}

CheckReport fiber_description_check() {
  CheckReport rep;
  GenericPoint gp = generic_point();
  std::vector<Value> v = fiber_y_values(gp.p);
  Value w = omega_in(gp.tower);
  const Value lams[] = {one(gp.tower), w, mul(w, w)};
  static const char* names[] = {"1", "w", "w^2"};
  if (!equal(v[0], gp.p.y))
    fail(ErrorKind::CheckFailed, "fiber value 1 is not y(P)");
  for (int i = 0; i < 3; ++i) {
    EllipticPoint t = torsion_translate(gp.p, lams[i]);
    if (!equal(v[i + 1], t.y))
      fail(ErrorKind::CheckFailed,
           std::string("fiber value does not match the 2-torsion translate "
                       "for lambda = ") +
               names[i]);
  }
  rep.passed.push_back(
      "fiber y-values are y(P + T) for T in the 2-torsion subgroup, "
      "in the order O, (-1,0), (-w,0), (-w^2,0)");
  return rep;
}

CheckReport lattes_sampling_check(int samples) {
  if (samples < 1)
    fail(ErrorKind::DegenerateInput, "need at least one sample");
  int done = 0;
  for (long k = 0; done < samples; ++k) {
    EllipticPoint p = curve_sample(k);
    if (is_zero(p.y)) continue;
    mul_neg2(p);  // every call cross-checks against the group law
    Value w = omega_in(p.x.field);
    torsion_translate(p, one(p.x.field));
    torsion_translate(p, w);
    torsion_translate(p, mul(w, w));
    ++done;
  }
  CheckReport rep;
  rep.passed.push_back(std::to_string(samples) +
                       " sampled points: mul_neg2 matches the negated "
                       "chord-tangent doubling");
  rep.passed.push_back(std::to_string(samples) +
                       " sampled points: torsion translation matches the "
                       "group law for lambda = 1, w, w^2");
  return rep;
}

}  // namespace pullback
