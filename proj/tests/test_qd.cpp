// Exact pushforward of quadratic differentials (trace method), pole bases,
// coderivative rank, the Laurent local model, and the Cauchy-like determinant.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "pullback/parse.hpp"
#include "pullback/qd.hpp"

using namespace pullback;

namespace {

const FieldPtr Q = Field::rationals();

FieldPtr omega() {
  // Q(w) with w^2 + w + 1 = 0, a primitive cube root of unity.
  return Field::number(Q, {one(Q), one(Q), one(Q)}, "w");
}

RatFunc rf(const std::string& text, const FieldPtr& k = Q) {
  return parse_ratfunc(text, k, "z");
}

ProjPoint fin(const Value& v) { return pp_finite(v); }
ProjPoint fin(long n, const FieldPtr& k = Q) {
  return pp_finite(from_int(k, n));
}

Value rnd_value(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  return make_rat(Rat(num(rng), den(rng)));
}

RatFunc rnd_map(std::mt19937& rng, int deg) {
  // Random rational map of exact degree `deg` over Q (retry until reduced
  // degree matches and the map is nonconstant).
  for (;;) {
    std::vector<Value> nc, dc;
    for (int i = 0; i <= deg; ++i) nc.push_back(rnd_value(rng));
    std::uniform_int_distribution<int> dd(0, deg);
    int dden = dd(rng);
    for (int i = 0; i <= dden; ++i) dc.push_back(rnd_value(rng));
    Poly n = poly_from(Q, nc), d = poly_from(Q, dc);
    if (n.deg() < deg || d.is_zero()) continue;
    RatFunc g = rf_make(n, d);
    if (rf_degree(g) == deg && !rf_is_constant(g)) return g;
  }
}

}  // namespace

TEST_CASE("bases of differentials with prescribed simple poles") {
  SECTION("four points including infinity: dimension one") {
    std::vector<ProjPoint> marked{fin(0), fin(1), fin(-1), pp_inf(Q)};
    std::vector<QuadraticDifferential> basis = qd_basis(marked);
    REQUIRE(basis.size() == 1);
    CHECK(rf_equal(basis[0].coeff, rf("1/(z^3-z)")));
    CHECK(basis[0].pole_at_infinity);
  }
  SECTION("five points including infinity: the triple family") {
    std::vector<ProjPoint> marked{fin(0), fin(1), fin(2), fin(3), pp_inf(Q)};
    std::vector<QuadraticDifferential> basis = qd_basis(marked);
    REQUIRE(basis.size() == 2);
    CHECK(rf_equal(basis[0].coeff, rf("1/(z^3-3*z^2+2*z)")));  // 1/(z(z-1)(z-2))
    CHECK(rf_equal(basis[1].coeff, rf("1/(z^3-4*z^2+3*z)")));  // 1/(z(z-1)(z-3))
  }
  SECTION("four finite points, no pole at infinity") {
    FieldPtr k = omega();
    Value w = generator(k);
    std::vector<ProjPoint> marked{
        fin(zero(k)), fin(from_int(k, -1)), fin(neg(w)), fin(neg(mul(w, w)))};
    std::vector<QuadraticDifferential> basis = qd_basis(marked);
    REQUIRE(basis.size() == 1);
    CHECK(rf_equal(basis[0].coeff, rf("1/(z^4+z)", k)));
    CHECK_FALSE(basis[0].pole_at_infinity);
  }
  SECTION("pole set as a polynomial") {
    std::vector<QuadraticDifferential> basis =
        qd_basis_poly(parse_poly("z^4+2*z", Q, "z"), false);
    REQUIRE(basis.size() == 1);
    CHECK(rf_equal(basis[0].coeff, rf("1/(z^4+2*z)")));
    // With infinity marked as well the numerator degree may grow by one.
    CHECK(qd_basis_poly(parse_poly("z^4+2*z", Q, "z"), true).size() == 2);
  }
  SECTION("rejections") {
    CHECK_THROWS_MATCHES(
        qd_basis({fin(0), fin(1), pp_inf(Q)}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.kind() == ErrorKind::TooFewPoints;
        }));
    CHECK_THROWS_MATCHES(
        qd_basis({fin(0), fin(1), fin(1), pp_inf(Q)}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return e.kind() == ErrorKind::DuplicatePoint;
        }));
  }
}

TEST_CASE("differential constructor validation") {
  Poly cubic = parse_poly("z^3-z", Q, "z");
  SECTION("valid with a flagged simple pole at infinity") {
    QuadraticDifferential q = qd_make(rf("1/(z^3-z)"), cubic, true);
    CHECK(rf_equal(q.coeff, rf("1/(z^3-z)")));
  }
  SECTION("undeclared finite pole") {
    CHECK_THROWS_AS(qd_make(rf("1/(z^3-z)"),
                            parse_poly("z^2-z", Q, "z"), true),
                    Error);
  }
  SECTION("pole at infinity too heavy even when flagged") {
    // order at infinity = 4 - (3 - 2) = 3
    CHECK_THROWS_AS(qd_make(rf("z^2/(z^3-z)"), cubic, true), Error);
  }
  SECTION("unflagged pole at infinity") {
    CHECK_THROWS_AS(qd_make(rf("1/(z^3-z)"), cubic, false), Error);
  }
}

TEST_CASE("pushforward along the squaring map") {
  QuadraticDifferential q =
      qd_make(rf("1/(z^4-5*z^2+4)"),  // 1/((z^2-1)(z^2-4))
              parse_poly("z^4-5*z^2+4", Q, "z"), false);
  QuadraticDifferential img = pushforward(rf("z^2"), q);
  CHECK(rf_equal(img.coeff, rf("1/(2*z^3-10*z^2+8*z)")));  // 1/(2z(z-1)(z-4))
  // 4 - deg(den) = 1: the image picks up a simple pole at infinity (infinity
  // is a critical value of the squaring map).
  CHECK(img.pole_at_infinity);
}

TEST_CASE("pushforward that vanishes identically") {
  FieldPtr k = omega();
  RatFunc g = rf("(-1*z^4-2*z)/(2*z^3+1)", k);
  QuadraticDifferential q =
      qd_basis_poly(parse_poly("z^4+2*z", k, "z"), false)[0];
  QuadraticDifferential img = pushforward(g, q);
  CHECK(rf_is_zero(img.coeff));
  // The neighboring differential with poles at the marked fixed points does
  // NOT vanish: the kernel is specific to the critical-fiber pole set.
  QuadraticDifferential q2 =
      qd_basis_poly(parse_poly("z^4+z", k, "z"), false)[0];
  CHECK_FALSE(rf_is_zero(pushforward(g, q2).coeff));
}

TEST_CASE("pushforward along degree-one maps is substitution") {
  QuadraticDifferential q =
      qd_make(rf("1/(z^3-z)"), parse_poly("z^3-z", Q, "z"), true);
  SECTION("inversion") {
    QuadraticDifferential img = pushforward(rf("1/z"), q);
    // (1/z)_* q = q(1/z) * (d(1/z)/dz)^2 = -1/(z^3 - z)
    CHECK(rf_equal(img.coeff, rf_neg(rf("1/(z^3-z)"))));
  }
  SECTION("a Moebius round trip is the identity") {
    RatFunc m = rf("(2*z+1)/(z-1)");
    RatFunc minv = rf("(z+1)/(z-2)");
    REQUIRE(rf_equal(rf_compose(m, minv), rf("z")));
    QuadraticDifferential there = pushforward(m, q);
    QuadraticDifferential back = pushforward(minv, there);
    CHECK(rf_equal(back.coeff, q.coeff));
  }
}

TEST_CASE("pushforward is linear in the differential") {
  std::mt19937 rng(20240811);
  auto nonzero = [&](std::mt19937& r) {
    std::uniform_int_distribution<int> num(1, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return make_rat(Rat(num(r), den(r)));
  };
  Poly S = parse_poly("z^4-5*z^2+4", Q, "z");  // (z^2-1)(z^2-4), squarefree
  for (int trial = 0; trial < 5; ++trial) {
    RatFunc g = rnd_map(rng, 2 + trial % 2);
    RatFunc n1 = rf_from_poly(poly_from(Q, {nonzero(rng), rnd_value(rng)}));
    RatFunc n2 = rf_from_poly(poly_from(Q, {rnd_value(rng), nonzero(rng)}));
    RatFunc den = rf_from_poly(S);
    Value a = nonzero(rng), b = nonzero(rng);
    QuadraticDifferential q1 = qd_make(rf_div(n1, den), S, true);
    QuadraticDifferential q2 = qd_make(rf_div(n2, den), S, true);
    RatFunc combo = rf_add(rf_mul(rf_const(a), q1.coeff),
                           rf_mul(rf_const(b), q2.coeff));
    QuadraticDifferential qc = qd_make(combo, S, true);
    RatFunc lhs = pushforward(g, qc).coeff;
    RatFunc rhs = rf_add(rf_mul(rf_const(a), pushforward(g, q1).coeff),
                         rf_mul(rf_const(b), pushforward(g, q2).coeff));
    CHECK(rf_equal(lhs, rhs));
  }
}

TEST_CASE("pushforward is functorial under composition") {
  std::mt19937 rng(77002);
  Poly S = parse_poly("z^3-z", Q, "z");
  QuadraticDifferential q = qd_make(rf("1/(z^3-z)"), S, true);
  for (int trial = 0; trial < 3; ++trial) {
    RatFunc h = rnd_map(rng, 2);
    RatFunc g = rnd_map(rng, trial == 0 ? 3 : 2);
    RatFunc gh = rf_compose(g, h);
    REQUIRE(rf_degree(gh) == rf_degree(g) * rf_degree(h));
    QuadraticDifferential step = pushforward(g, pushforward(h, q));
    QuadraticDifferential direct = pushforward(gh, q);
    CHECK(rf_equal(step.coeff, direct.coeff));
  }
}

TEST_CASE("coderivative rank") {
  SECTION("quadratic with marked orbit of i") {
    FieldPtr k = Field::number(Q, {one(Q), zero(Q), one(Q)}, "i");
    Value i = generator(k);
    RatFunc g = rf("z^2+i", k);
    std::vector<ProjPoint> pts{fin(i), fin(add(from_int(k, -1), i)),
                               fin(neg(i)), pp_inf(k)};
    RankResult r = coderivative_rank(g, pts, pts);
    CHECK(r.rank == 1);
    REQUIRE(r.matrix.entries.size() == 1);
    REQUIRE(r.matrix.entries[0].size() == 1);
    CHECK_FALSE(is_zero(r.matrix.entries[0][0]));
  }
  SECTION("rank zero across the critical-fiber marking") {
    FieldPtr k = omega();
    Value w = generator(k);
    RatFunc g = rf("(-1*z^4-2*z)/(2*z^3+1)", k);
    std::vector<ProjPoint> B{
        fin(zero(k)), fin(from_int(k, -1)), fin(neg(w)), fin(neg(mul(w, w)))};
    RankResult r =
        coderivative_rank_poly(g, parse_poly("z^4+2*z", k, "z"), false, B);
    CHECK(r.rank == 0);
    REQUIRE(r.matrix.entries.size() == 1);
    REQUIRE(r.matrix.entries[0].size() == 1);
    CHECK(is_zero(r.matrix.entries[0][0]));
    // The literal same-marking variant is admissible but has rank one.
    CHECK(coderivative_rank(g, B, B).rank == 1);
  }
  SECTION("three marked points: zero-dimensional source") {
    RankResult r = coderivative_rank(
        rf("z^2"), {fin(0), fin(1), pp_inf(Q)}, {fin(0), fin(1), pp_inf(Q)});
    CHECK(r.rank == 0);
    CHECK(r.matrix.source_basis.empty());
  }
  SECTION("missing critical value in the target is inadmissible") {
    std::vector<ProjPoint> A{fin(1), fin(2), fin(3), pp_inf(Q)};
    std::vector<ProjPoint> B{fin(1), fin(4), fin(9), pp_inf(Q)};
    CHECK_THROWS_MATCHES(coderivative_rank(rf("z^2"), A, B), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::AdmissibilityViolated;
                         }));
  }
  SECTION("source image outside the target is inadmissible") {
    std::vector<ProjPoint> A{fin(0), fin(3), fin(-3), pp_inf(Q)};
    std::vector<ProjPoint> B{fin(0), fin(1), fin(4), pp_inf(Q)};
    CHECK_THROWS_MATCHES(coderivative_rank(rf("z^2"), A, B), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::AdmissibilityViolated;
                         }));
  }
}

TEST_CASE("Laurent local model at a critical point") {
  auto at = [](const std::map<int, Value>& b, int j) -> Rat {
    auto it = b.find(j);
    if (it == b.end()) return Rat(0);
    return parse_rat_literal(value_to_string(it->second));
  };
  SECTION("simple critical point, constant source term") {
    std::map<int, Value> a{{0, from_int(Q, 5)}};
    std::map<int, Value> b = laurent_local_pushforward(2, a, 3);
    CHECK(at(b, -1) == Rat(5, 2));
    for (int j = 0; j <= 3; ++j) CHECK(at(b, j) == Rat(0));
  }
  SECTION("multiplicity three") {
    std::map<int, Value> a{{-1, from_int(Q, 6)},
                           {1, from_int(Q, 5)},
                           {4, from_int(Q, 9)}};
    std::map<int, Value> b = laurent_local_pushforward(3, a, 2);
    CHECK(at(b, -1) == Rat(5, 3));  // a_1 / 3
    CHECK(at(b, 0) == Rat(3));      // a_4 / 3
    CHECK(at(b, 1) == Rat(0));
    CHECK(at(b, 2) == Rat(0));
  }
  SECTION("a simple pole upstairs contributes nothing downstairs") {
    std::map<int, Value> a{{-1, one(Q)}};
    std::map<int, Value> b = laurent_local_pushforward(2, a, 4);
    for (int j = -1; j <= 4; ++j) CHECK(at(b, j) == Rat(0));
  }
  SECTION("index bookkeeping across a range") {
    // b_j pulls exactly a_{m(j+2)-2}: seed every a_k with k itself.
    std::map<int, Value> a;
    for (int k = -1; k <= 20; ++k) a[k] = from_int(Q, k);
    std::map<int, Value> b = laurent_local_pushforward(4, a, 3);
    for (int j = -1; j <= 3; ++j)
      CHECK(at(b, j) == Rat(4 * (j + 2) - 2, 4));
  }
}

TEST_CASE("Cauchy-like determinant") {
  auto I = [](long n) { return from_int(Q, n); };
  SECTION("one by one") {
    Value d = cauchy_like_det({I(3)}, {I(0), I(1), I(2)});
    CHECK(equal(d, make_rat(Rat(1, 6))));
  }
  SECTION("two by two oracle") {
    Value d = cauchy_like_det({I(4), I(5)}, {I(0), I(1), I(2), I(3)});
    CHECK(equal(d, make_rat(Rat(-1, 2880))));
  }
  SECTION("random inputs are nonzero and internally cross-checked") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
      // Distinct u and w drawn from disjoint ranges.
      std::vector<Value> u, w;
      std::vector<int> pool;
      for (int i = 0; i < 20; ++i) pool.push_back(i);
      std::shuffle(pool.begin(), pool.end(), rng);
      int m = 1 + trial % 3;
      for (int i = 0; i < m + 2; ++i) u.push_back(I(pool[i]));
      for (int i = 0; i < m; ++i) w.push_back(I(100 + pool[m + 2 + i]));
      CHECK_FALSE(is_zero(cauchy_like_det(w, u)));
    }
  }
  SECTION("degenerate inputs") {
    auto degen = [](const Error& e) {
      return e.kind() == ErrorKind::DegenerateInput;
    };
    CHECK_THROWS_MATCHES(cauchy_like_det({I(0)}, {I(0), I(1), I(2)}), Error,
                         Catch::Matchers::Predicate<Error>(degen));
    CHECK_THROWS_MATCHES(cauchy_like_det({I(5)}, {I(0), I(0), I(2)}), Error,
                         Catch::Matchers::Predicate<Error>(degen));
    CHECK_THROWS_MATCHES(
        cauchy_like_det({I(5), I(5)}, {I(0), I(1), I(2), I(3)}), Error,
        Catch::Matchers::Predicate<Error>(degen));
    CHECK_THROWS_MATCHES(cauchy_like_det({}, {I(0), I(1)}), Error,
                         Catch::Matchers::Predicate<Error>(degen));
    CHECK_THROWS_MATCHES(cauchy_like_det({I(5)}, {I(0), I(1)}), Error,
                         Catch::Matchers::Predicate<Error>(degen));
  }
}

TEST_CASE("critical value polynomial") {
  CHECK(pequal(critical_value_polynomial(rf("z^2")),
               parse_poly("z", Q, "z")));
  CHECK(pequal(critical_value_polynomial(rf("z^3")),
               parse_poly("z", Q, "z")));
  FieldPtr k = omega();
  CHECK(pequal(critical_value_polynomial(rf("(-1*z^4-2*z)/(2*z^3+1)", k)),
               parse_poly("z^3+1", k, "z")));
  CHECK_THROWS_MATCHES(critical_value_polynomial(rf("3")), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::ConstantMap;
                       }));
}

TEST_CASE("exact matrix rank over tower fields") {
  auto I = [](long n) { return from_int(Q, n); };
  CHECK(matrix_rank({{I(1), I(2)}, {I(2), I(4)}}) == 1);
  CHECK(matrix_rank({{I(1), I(0), I(0)},
                     {I(0), I(1), I(0)},
                     {I(0), I(0), I(1)}}) == 3);
  CHECK(matrix_rank({{I(0), I(0)}, {I(0), I(0)}}) == 0);
  FieldPtr k = omega();
  Value w = generator(k);
  // det = w * w^2 - 1 = 0, so rank 1.
  CHECK(matrix_rank({{w, one(k)}, {one(k), mul(w, w)}}) == 1);
}
