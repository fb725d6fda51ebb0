// Bicritical parameter correspondence: cyclotomic parameter fields, exact
// curve fibers over t', the normal form with its identity suite, and the
// deterministic nonconstancy witness.

#include <catch2/catch_amalgamated.hpp>

#include "pullback/bicritical.hpp"
#include "pullback/parse.hpp"

using namespace pullback;

namespace {

const FieldPtr Q = Field::rationals();

bool value_is(const Value& v, const Rat& r) {
  return equal(v, from_rat(v.field, r));
}

bool fiber_has(const std::vector<CurvePoint>& fiber, const Rat& x,
               const Rat& y) {
  for (const CurvePoint& p : fiber)
    if (value_is(p.x, x) && value_is(p.y, y)) return true;
  return false;
}

}  // namespace

TEST_CASE("cyclotomic parameter fields") {
  SECTION("third roots of unity") {
    FieldPtr k = cyclotomic_field(3);
    Value w = generator(k);
    CHECK(is_zero(add(add(mul(w, w), w), one(k))));
    CHECK(equal(pow_int(w, 3), one(k)));
  }
  SECTION("fourth roots of unity") {
    FieldPtr k = cyclotomic_field(4);
    Value i = generator(k);
    CHECK(is_zero(add(mul(i, i), one(k))));
  }
  SECTION("fifth roots sum to minus one") {
    FieldPtr k = cyclotomic_field(5);
    Value z = generator(k);
    Value s = zero(k);
    for (int e = 1; e <= 4; ++e) s = add(s, pow_int(z, e));
    CHECK(equal(s, from_int(k, -1)));
  }
  SECTION("second roots degenerate to a linear modulus") {
    FieldPtr k = cyclotomic_field(2);
    CHECK(equal(generator(k), from_int(k, -1)));
  }
  CHECK_THROWS_AS(cyclotomic_field(1), Error);
}

TEST_CASE("quadratic split-fixed fiber over t' = -3") {
  BicriticalClass c;
  c.d = 2;
  c.lambda_exp = 1;
  c.lambda_prime_exp = 1;
  c.kase = BicriticalCase::SplitFixed;
  std::vector<CurvePoint> fiber = curve_fiber(c, from_int(Q, -3));
  REQUIRE(fiber.size() == 2);
  CHECK(fiber_has(fiber, Rat(1), Rat(-3)));
  CHECK(fiber_has(fiber, Rat(-3), Rat(1)));
  for (const CurvePoint& p : fiber) {
    Value t = map_t(p, 2);
    CHECK((value_is(t, Rat(1, 9)) || value_is(t, Rat(9))));
    CHECK(value_is(p.t_prime, Rat(-3)));
  }
}

TEST_CASE("fiber requiring a square-root extension") {
  BicriticalClass c;
  c.d = 2;
  c.kase = BicriticalCase::SplitFixed;
  // x + y = -2 and x y = 8: discriminant -28 is not a rational square.
  std::vector<CurvePoint> fiber = curve_fiber(c, from_int(Q, 8));
  REQUIRE(fiber.size() == 2);
  for (const CurvePoint& p : fiber) {
    CHECK_FALSE(Field::same(p.x.field, Q));
    CHECK(value_is(add(p.x, p.y), Rat(-2)));
    CHECK(value_is(mul(p.x, p.y), Rat(8)));
    CHECK_FALSE(equal(map_t(p, 2), one(p.x.field)));
  }
}

TEST_CASE("degenerate and trivial parameters") {
  BicriticalClass c;
  c.d = 2;
  auto kind_is = [](ErrorKind k) {
    return Catch::Matchers::Predicate<Error>(
        [k](const Error& e) { return e.kind() == k; });
  };
  CHECK_THROWS_MATCHES(curve_fiber(c, zero(Q)), Error,
                       kind_is(ErrorKind::DegenerateParameter));
  CHECK_THROWS_MATCHES(curve_fiber(c, one(Q)), Error,
                       kind_is(ErrorKind::DegenerateParameter));
  BicriticalClass trivial = c;
  trivial.lambda_exp = 0;
  CHECK_THROWS_MATCHES(curve_fiber(trivial, from_int(Q, -3)), Error,
                       kind_is(ErrorKind::TrivialRoot));
  CHECK_THROWS_MATCHES(nonconstancy_witness(trivial), Error,
                       kind_is(ErrorKind::TrivialRoot));
  BicriticalClass wrapped = c;
  wrapped.lambda_prime_exp = 2;  // zeta_2^2 = 1
  CHECK_THROWS_MATCHES(curve_fiber(wrapped, from_int(Q, -3)), Error,
                       kind_is(ErrorKind::TrivialRoot));
}

TEST_CASE("normal form and its identity suite") {
  BicriticalClass c;
  c.d = 2;
  c.kase = BicriticalCase::SplitFixed;
  std::vector<CurvePoint> fiber = curve_fiber(c, from_int(Q, -3));
  REQUIRE(fiber.size() == 2);
  for (const CurvePoint& p : fiber) {
    RatFunc g = bicritical_normal_form(p, 2);
    FieldPtr k = p.x.field;
    if (value_is(p.x, Rat(-3))) {
      // ((z-3)/(z+1))^2
      CHECK(rf_equal(g, parse_ratfunc("(z^2-6*z+9)/(z^2+2*z+1)", k, "z")));
    } else {
      // ((z+1)/(z-3))^2
      CHECK(rf_equal(g, parse_ratfunc("(z^2+2*z+1)/(z^2-6*z+9)", k, "z")));
    }
    // Both critical points are fully ramified.
    CHECK(rf_local_mult(g, pp_finite(neg(p.x))) == 2);
    CHECK(rf_local_mult(g, pp_finite(neg(p.y))) == 2);
    CHECK(pp_equal(rf_eval(g, pp_finite(neg(p.x))), pp_finite(zero(k))));
    CHECK(rf_eval(g, pp_finite(neg(p.y))).infinite);
    CHECK(pp_equal(rf_eval(g, pp_inf(k)), pp_finite(one(k))));
    CHECK(equal(rf_eval(g, pp_finite(zero(k))).v, map_t(p, 2)));

    CheckReport rep = normal_form_check(p, c);
    CHECK(rep.passed.size() >= 5);
  }
}

TEST_CASE("case identities distinguish the two cases") {
  BicriticalClass split;
  split.d = 2;
  split.kase = BicriticalCase::SplitFixed;
  std::vector<CurvePoint> fiber = curve_fiber(split, from_int(Q, -3));
  REQUIRE_FALSE(fiber.empty());
  BicriticalClass cycle = split;
  cycle.kase = BicriticalCase::TwoCycle;
  // A split-fixed point fails the two-cycle identity g(t') = 1.
  CHECK_THROWS_MATCHES(normal_form_check(fiber[0], cycle), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::CheckFailed;
                       }));
}

TEST_CASE("two-cycle case on a cubic class") {
  BicriticalClass c;
  c.d = 3;
  c.lambda_exp = 1;
  c.lambda_prime_exp = 2;
  c.kase = BicriticalCase::TwoCycle;
  BicriticalWitness w = nonconstancy_witness(c);
  REQUIRE_FALSE(w.fiber_a.empty());
  REQUIRE(w.t_values.size() == 2);
  for (const CurvePoint& p : w.fiber_a) {
    RatFunc g = bicritical_normal_form(p, 3);
    FieldPtr k = p.x.field;
    // g(t') = 1 and g(1) = t on the two-cycle curve.
    CHECK(pp_equal(rf_eval(g, pp_finite(p.t_prime)), pp_finite(one(k))));
    CHECK(equal(rf_eval(g, pp_finite(one(k))).v, map_t(p, 3)));
    CHECK(normal_form_check(p, c).passed.size() >= 5);
  }
}

TEST_CASE("deterministic nonconstancy witness") {
  SECTION("quadratic frozen values") {
    BicriticalClass c;
    c.d = 2;
    c.kase = BicriticalCase::SplitFixed;
    BicriticalWitness w = nonconstancy_witness(c);
    CHECK(value_is(w.tprime_a, Rat(-3)));
    CHECK(value_is(w.tprime_b, Rat(-2)));
    REQUIRE(w.t_values.size() == 2);
    bool ninth = false, nine = false;
    for (const Value& t : w.t_values) {
      ninth = ninth || value_is(t, Rat(1, 9));
      nine = nine || value_is(t, Rat(9));
    }
    CHECK(ninth);
    CHECK(nine);
    CHECK(w.normal_forms.size() == 2);
    // The two parameters genuinely separate: distinct t' with valid fibers.
    CHECK_FALSE(equal(embed(w.tprime_b.field, w.tprime_a), w.tprime_b));
  }
  SECTION("all classes up to degree four have witnesses") {
    for (int d = 2; d <= 4; ++d) {
      for (int a = 1; a < d; ++a) {
        for (int b = 1; b < d; ++b) {
          for (BicriticalCase kase :
               {BicriticalCase::SplitFixed, BicriticalCase::TwoCycle}) {
            BicriticalClass c;
            c.d = d;
            c.lambda_exp = a;
            c.lambda_prime_exp = b;
            c.kase = kase;
            INFO("d=" << d << " a=" << a << " b=" << b << " case="
                      << (kase == BicriticalCase::SplitFixed ? "split"
                                                             : "cycle"));
            BicriticalWitness w = nonconstancy_witness(c);
            CHECK_FALSE(w.fiber_a.empty());
            CHECK_FALSE(w.fiber_b.empty());
            CHECK(w.t_values.size() == 2);
            for (const Value& t : w.t_values) {
              CHECK_FALSE(is_zero(t));
              CHECK_FALSE(equal(t, one(t.field)));
            }
          }
        }
      }
    }
  }
}
