#include "pullback/bicritical.hpp"

#include <algorithm>

namespace pullback {

namespace {

// If v is a rational sitting inside a (possibly trivial) number-field tower,
// extract it.
std::optional<Rat> value_as_rat(const Value& v) {
  if (v.field->kind() == Field::Kind::Rationals) return v.rat;
  if (v.field->kind() != Field::Kind::Number) return std::nullopt;
  if (v.num.empty()) return Rat(0);
  if (v.num.size() > 1) return std::nullopt;
  return value_as_rat(v.num[0]);
}

std::string fresh_symbol(const FieldPtr& k, const std::string& base) {
  std::vector<std::string> used = k->generator_names();
  std::string name = base;
  int i = 2;
  while (std::find(used.begin(), used.end(), name) != used.end())
    name = base + std::to_string(i++);
  return name;
}

void require_nontrivial(const BicriticalClass& c) {
  if (c.d < 2)
    fail(ErrorKind::DegenerateParameter, "degree must be at least 2");
  if (c.lambda_exp % c.d == 0 || c.lambda_prime_exp % c.d == 0)
    fail(ErrorKind::TrivialRoot,
         "lambda and lambda' must be nontrivial d-th roots of unity");
}

}  // namespace

FieldPtr cyclotomic_field(int d) {
  if (d < 2) fail(ErrorKind::DegenerateParameter, "degree must be at least 2");
  Poly phi = cyclotomic(d);
  return Field::number(Field::rationals(), phi.c, "w");
}

std::vector<CurvePoint> curve_fiber(const BicriticalClass& c,
                                    const Value& t_prime) {
  require_nontrivial(c);
  FieldPtr kd = cyclotomic_field(c.d);
  FieldPtr k = field_join({kd, t_prime.field});
  Value tp = embed(k, t_prime);
  if (is_zero(tp) || equal(tp, one(k)))
    fail(ErrorKind::DegenerateParameter, "t' must avoid 0 and 1");
  Value lam = pow_int(embed(k, generator(kd)), c.lambda_exp);
  Value lamp = pow_int(embed(k, generator(kd)), c.lambda_prime_exp);

  // x = alpha + beta y from the linear equation of the case.
  Value alpha, beta = lam;
  if (c.kase == BicriticalCase::SplitFixed)
    alpha = sub(lam, one(k));
  else
    alpha = mul(sub(lam, one(k)), tp);
  Poly xp = poly_from(k, {alpha, beta});
  Poly y = poly_x(k);

  // Substitute into the remaining equation; an exact quadratic in y.
  Poly lhs, rhs;
  if (c.kase == BicriticalCase::SplitFixed) {
    lhs = pmul(y, padd(poly_const(tp), xp));
    rhs = pscale(pmul(xp, padd(poly_const(tp), y)), lamp);
  } else {
    lhs = pmul(y, padd(poly_const(one(k)), xp));
    rhs = pscale(pmul(xp, padd(poly_const(one(k)), y)), lamp);
  }
  Poly q = psub(lhs, rhs);
  if (q.deg() != 2)
    fail(ErrorKind::Internal, "curve substitution did not yield a quadratic");
  Value a2 = q.c[2], a1 = q.c[1], a0 = q.c[0];
  Value disc = sub(mul(a1, a1), mul(from_int(k, 4), mul(a2, a0)));

  std::vector<Value> ys;
  FieldPtr work = k;
  if (is_zero(disc)) {
    ys.push_back(div(neg(a1), mul(from_int(k, 2), a2)));
  } else {
    std::optional<Value> root;
    if (auto dr = value_as_rat(disc)) {
      if (auto sq = rat_sqrt(*dr)) root = from_rat(k, *sq);
    }
    if (!root) {
      // Adjoin a square root of the discriminant.
      std::vector<Value> modulus{neg(disc), zero(k), one(k)};
      work = Field::number(k, modulus, fresh_symbol(k, "s"));
      root = generator(work);
    }
    Value two_a = embed(work, mul(from_int(k, 2), a2));
    Value nb = embed(work, neg(a1));
    Value r = embed(work, *root);
    ys.push_back(div(add(nb, r), two_a));
    ys.push_back(div(sub(nb, r), two_a));
  }

  std::vector<CurvePoint> out;
  for (const Value& yv : ys) {
    Value xv = add(embed(work, alpha), mul(embed(work, beta), yv));
    if (is_zero(xv) || is_zero(yv)) continue;
    Value ratio_pow = pow_int(div(xv, yv), c.d);
    if (equal(ratio_pow, one(work))) continue;
    out.push_back(CurvePoint{xv, yv, embed(work, tp)});
  }
  return out;
}

Value map_t(const CurvePoint& pt, int d) {
  return pow_int(div(pt.x, pt.y), d);
}

RatFunc bicritical_normal_form(const CurvePoint& pt, int d) {
  FieldPtr k = pt.x.field;
  Poly zn = poly_from(k, {pt.x, one(k)});
  Poly zd = poly_from(k, {embed(k, pt.y), one(k)});
  return rf_make(ppow(zn, d), ppow(zd, d));
}

CheckReport normal_form_check(const CurvePoint& pt, const BicriticalClass& c) {
  require_nontrivial(c);
  FieldPtr k = pt.x.field;
  RatFunc g = bicritical_normal_form(pt, c.d);
  Value t = map_t(pt, c.d);
  CheckReport rep;

  auto expect_point = [&](const ProjPoint& at, const ProjPoint& want,
                          const std::string& name) {
    ProjPoint got = rf_eval(g, at);
    if (!pp_equal(got, want))
      fail(ErrorKind::CheckFailed, "identity failed: " + name);
    rep.passed.push_back(name);
  };

  ProjPoint minus_x = pp_finite(neg(pt.x));
  ProjPoint minus_y = pp_finite(neg(embed(k, pt.y)));
  expect_point(minus_x, pp_finite(zero(k)), "g(-x) = 0");
  if (rf_local_mult(g, minus_x) != c.d)
    fail(ErrorKind::CheckFailed, "identity failed: -x fully ramified");
  rep.passed.push_back("-x fully ramified");
  expect_point(minus_y, pp_inf(k), "g(-y) = infinity");
  if (rf_local_mult(g, minus_y) != c.d)
    fail(ErrorKind::CheckFailed, "identity failed: -y fully ramified");
  rep.passed.push_back("-y fully ramified");
  expect_point(pp_inf(k), pp_finite(one(k)), "g(infinity) = 1");
  expect_point(pp_finite(zero(k)), pp_finite(embed(k, t)), "g(0) = t");

  ProjPoint tp = pp_finite(embed(k, pt.t_prime));
  if (c.kase == BicriticalCase::SplitFixed) {
    expect_point(pp_finite(one(k)), pp_finite(one(k)), "g(1) = 1");
    expect_point(tp, pp_finite(embed(k, t)), "g(t') = t");
  } else {
    expect_point(tp, pp_finite(one(k)), "g(t') = 1");
    expect_point(pp_finite(one(k)), pp_finite(embed(k, t)), "g(1) = t");
  }
  return rep;
}

BicriticalWitness nonconstancy_witness(const BicriticalClass& c) {
  require_nontrivial(c);
  // t' scan order: -3, -2, 2, 3, -4, 4, -5, 5, ...
  std::vector<Rat> sequence{-3, -2, 2, 3};
  for (int n = 4; n <= 24; ++n) {
    sequence.push_back(-n);
    sequence.push_back(n);
  }

  BicriticalWitness w;
  bool have_a = false, have_b = false, have_pair = false;
  for (const Rat& tr : sequence) {
    Value tp = make_rat(tr);
    std::vector<CurvePoint> fiber;
    try {
      fiber = curve_fiber(c, tp);
      for (const CurvePoint& pt : fiber) normal_form_check(pt, c);
    } catch (const Error&) {
      continue;  // skip degenerate or otherwise unusable parameters
    }
    if (fiber.empty()) continue;
    if (!have_a) {
      w.tprime_a = tp;
      w.fiber_a = fiber;
      have_a = true;
    } else if (!have_b) {
      w.tprime_b = tp;
      w.fiber_b = fiber;
      have_b = true;
    }
    if (fiber.size() == 2 && !have_pair) {
      have_pair = true;
      for (const CurvePoint& pt : fiber) {
        w.t_values.push_back(map_t(pt, c.d));
        w.normal_forms.push_back(
            rf_to_string(bicritical_normal_form(pt, c.d), "z"));
      }
      FieldPtr base = field_join({cyclotomic_field(c.d), tp.field});
      if (Field::same(fiber[0].x.field, base))
        w.notes.push_back(
            "discriminant is a square: the fiber splits over the base field");
      else
        w.notes.push_back(
            "fiber lives in a quadratic extension (discriminant is not a "
            "square in the base field)");
    }
    if (have_a && have_b && have_pair) return w;
  }
  fail(ErrorKind::WitnessSearchFailed,
       "no witness found in the deterministic parameter scan");
}

}  // namespace pullback
