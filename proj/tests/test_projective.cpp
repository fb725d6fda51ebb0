// Projective-line machinery: cross ratios and their Moebius invariance,
// projective evaluation, local multiplicities, and the polynomial helpers
// (extended Euclid, cyclotomics, resultants) that the algebraic engines use.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pullback/parse.hpp"

using namespace pullback;

namespace {

FieldPtr q_omega() {
  FieldPtr q = Field::rationals();
  return Field::number(
      q, {from_int(q, 1), from_int(q, 1), from_int(q, 1)}, "w");
}

ProjPoint fin(const FieldPtr& k, long n) { return pp_finite(from_int(k, n)); }

ProjPoint fin(const FieldPtr& k, const Rat& r) {
  return pp_finite(from_rat(k, r));
}

// Image of a projective point under (a z + b)/(c z + d).
ProjPoint apply_mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                       const ProjPoint& p, const FieldPtr& k) {
  RatFunc mu = rf_make(
      poly_from(k, {from_rat(k, b), from_rat(k, a)}),
      poly_from(k, {from_rat(k, d), from_rat(k, c)}));
  return rf_eval(mu, p);
}

}  // namespace

TEST_CASE("cross ratio normalization and hand values") {
  FieldPtr q = Field::rationals();
  ProjPoint infp = pp_inf(q);

  // T(z, 0, inf, 1) = z for several z.
  for (long z : {2L, -7L, 5L}) {
    Value t = cross_ratio(fin(q, z), fin(q, 0L), infp, fin(q, 1L));
    CHECK(equal(t, from_int(q, z)));
  }
  CHECK(equal(cross_ratio(fin(q, Rat(22, 7)), fin(q, 0L), infp, fin(q, 1L)),
              from_rat(q, Rat(22, 7))));

  // T(0,1,2,3) = (0-1)(3-2)/((0-2)(3-1)) = 1/4.
  CHECK(equal(cross_ratio(fin(q, 0L), fin(q, 1L), fin(q, 2L), fin(q, 3L)),
              from_rat(q, Rat(1, 4))));

  // Infinite entries in every slot are legal.
  CHECK_NOTHROW(cross_ratio(infp, fin(q, 1L), fin(q, 2L), fin(q, 3L)));
  CHECK_NOTHROW(cross_ratio(fin(q, 0L), infp, fin(q, 2L), fin(q, 3L)));
  CHECK_NOTHROW(cross_ratio(fin(q, 0L), fin(q, 1L), fin(q, 2L), infp));
}

TEST_CASE("cross ratio rejects coincident points") {
  FieldPtr q = Field::rationals();
  CHECK_THROWS_MATCHES(
      cross_ratio(fin(q, 1L), fin(q, 1L), fin(q, 2L), fin(q, 3L)), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == ErrorKind::DegenerateTuple;
      }));
  CHECK_THROWS_AS(
      cross_ratio(pp_inf(q), fin(q, 1L), pp_inf(q), fin(q, 3L)), Error);
}

TEST_CASE("cross ratio is Moebius invariant") {
  FieldPtr q = Field::rationals();

  SECTION("the fixed instance mu(z) = 2z + 1 on (0,1,2,3)") {
    ProjPoint a = apply_mobius(2, 1, 0, 1, fin(q, 0L), q);
    ProjPoint b = apply_mobius(2, 1, 0, 1, fin(q, 1L), q);
    ProjPoint c = apply_mobius(2, 1, 0, 1, fin(q, 2L), q);
    ProjPoint d = apply_mobius(2, 1, 0, 1, fin(q, 3L), q);
    CHECK(equal(cross_ratio(a, b, c, d), from_rat(q, Rat(1, 4))));
  }

  SECTION("random Moebius maps on random tuples, infinity included") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> small(-8, 8);
    int done = 0;
    while (done < 40) {
      Rat ma = small(rng), mb = small(rng), mc = small(rng), md = small(rng);
      if (ma * md - mb * mc == 0) continue;
      // Four distinct points; index 0 may be infinity.
      std::vector<ProjPoint> pts;
      std::uniform_int_distribution<int> use_inf(0, 3);
      bool with_inf = use_inf(rng) == 0;
      std::vector<long> coords;
      while (coords.size() < (with_inf ? 3u : 4u)) {
        long v = small(rng);
        bool fresh = true;
        for (long u : coords) fresh = fresh && u != v;
        if (fresh) coords.push_back(v);
      }
      if (with_inf) pts.push_back(pp_inf(q));
      for (long v : coords) pts.push_back(fin(q, v));

      Value before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
      Value after = cross_ratio(apply_mobius(ma, mb, mc, md, pts[0], q),
                                apply_mobius(ma, mb, mc, md, pts[1], q),
                                apply_mobius(ma, mb, mc, md, pts[2], q),
                                apply_mobius(ma, mb, mc, md, pts[3], q));
      REQUIRE(equal(before, after));
      ++done;
    }
  }
}

TEST_CASE("projective evaluation handles poles and infinity") {
  FieldPtr q = Field::rationals();
  RatFunc f = parse_ratfunc("(z+1)/(z-2)", q, "z");
  CHECK(pp_equal(rf_eval(f, fin(q, 2L)), pp_inf(q)));       // pole
  CHECK(pp_equal(rf_eval(f, pp_inf(q)), fin(q, 1L)));       // deg-balanced
  CHECK(pp_equal(rf_eval(f, fin(q, 0L)), fin(q, Rat(-1, 2))));
  RatFunc sq = parse_ratfunc("z^2", q, "z");
  CHECK(pp_equal(rf_eval(sq, pp_inf(q)), pp_inf(q)));
}

TEST_CASE("local mapping multiplicities") {
  FieldPtr q = Field::rationals();
  RatFunc sq = parse_ratfunc("z^2", q, "z");
  CHECK(rf_local_mult(sq, fin(q, 0L)) == 2);
  CHECK(rf_local_mult(sq, fin(q, 1L)) == 1);
  CHECK(rf_local_mult(sq, pp_inf(q)) == 2);

  // The quartic of the elliptic example: critical points are the cube roots
  // of unity, each with local degree 3; everything else is regular.
  FieldPtr k = q_omega();
  RatFunc g = parse_ratfunc("(-1*z*(z^3+2))/(2*z^3+1)", k, "z");
  CHECK(rf_local_mult(g, fin(k, 1L)) == 3);
  CHECK(rf_local_mult(g, pp_finite(generator(k))) == 3);
  CHECK(rf_local_mult(g, pp_finite(mul(generator(k), generator(k)))) == 3);
  CHECK(rf_local_mult(g, fin(k, 0L)) == 1);
  CHECK(rf_local_mult(g, pp_inf(k)) == 1);
}

TEST_CASE("extended Euclid oracle triples") {
  FieldPtr q = Field::rationals();
  Poly z2m1 = parse_poly("z^2-1", q, "z");
  Poly zm1 = parse_poly("z-1", q, "z");
  Poly z2p1 = parse_poly("z^2+1", q, "z");
  Poly z = parse_poly("z", q, "z");

  ExtEuclid e1 = pext_euclid(z2m1, zm1);
  CHECK(pequal(e1.g, zm1));
  CHECK(e1.s.is_zero());
  CHECK(pequal(e1.t, poly_const(one(q))));

  ExtEuclid e2 = pext_euclid(z2p1, z);
  CHECK(pequal(e2.g, poly_const(one(q))));
  CHECK(pequal(padd(pmul(e2.s, z2p1), pmul(e2.t, z)), e2.g));
  CHECK(pequal(e2.s, poly_const(one(q))));
  CHECK(pequal(e2.t, pneg(z)));

  ExtEuclid e3 = pext_euclid(poly_zero(q), z);
  CHECK(pequal(e3.g, z));
  CHECK(e3.s.is_zero());
  CHECK(pequal(e3.t, poly_const(one(q))));

  // Bezout identity on random pairs.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff(-6, 6);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Value> ca, cb;
    for (int j = 0; j < 4; ++j) ca.push_back(from_int(q, coeff(rng)));
    for (int j = 0; j < 3; ++j) cb.push_back(from_int(q, coeff(rng)));
    Poly a = poly_from(q, ca), b = poly_from(q, cb);
    if (a.is_zero() && b.is_zero()) continue;
    ExtEuclid e = pext_euclid(a, b);
    REQUIRE(pequal(padd(pmul(e.s, a), pmul(e.t, b)), e.g));
    if (!e.g.is_zero()) REQUIRE(equal(e.g.c.back(), one(q)));
    REQUIRE(pdivides(e.g, a));
    REQUIRE(pdivides(e.g, b));
  }
}

TEST_CASE("cyclotomic polynomials") {
  FieldPtr q = Field::rationals();
  CHECK(poly_to_string(cyclotomic(3), "w") == "w^2+w+1");
  CHECK(poly_to_string(cyclotomic(4), "w") == "w^2+1");
  CHECK(poly_to_string(cyclotomic(6), "w") == "w^2-w+1");
  CHECK(poly_to_string(cyclotomic(1), "w") == "w-1");
  CHECK(cyclotomic(12).deg() == 4);

  // Product over divisors of 6 rebuilds x^6 - 1.
  Poly prod = poly_const(one(q));
  for (int d : {1, 2, 3, 6}) prod = pmul(prod, cyclotomic(d));
  CHECK(poly_to_string(prod, "x") == "x^6-1");
}

TEST_CASE("resultants and squarefree parts") {
  FieldPtr q = Field::rationals();
  // res(z^2-1, z-2) = (2-1)(2+1) up to sign convention: value of z^2-1 at 2.
  Poly a = parse_poly("z^2-1", q, "z");
  Poly b = parse_poly("z-2", q, "z");
  CHECK(equal(presultant(a, b), from_int(q, 3)));
  // Shared root makes the resultant vanish.
  CHECK(is_zero(presultant(a, parse_poly("z-1", q, "z"))));

  Poly cube = parse_poly("(z-1)^2*(z+3)", q, "z");
  CHECK_FALSE(psquarefree(cube));
  CHECK(pequal(psquarefree_part(cube), parse_poly("(z-1)*(z+3)", q, "z")));
  CHECK(psquarefree(parse_poly("z^2-1", q, "z")));

  auto sq = ppolynomial_sqrt(parse_poly("(z^2+2*z+5)^2", q, "z"));
  REQUIRE(sq.has_value());
  CHECK(pequal(*sq, parse_poly("z^2+2*z+5", q, "z")));
  CHECK_FALSE(ppolynomial_sqrt(parse_poly("z^2+1", q, "z")).has_value());
}

TEST_CASE("rational-function arithmetic keeps reduced form") {
  FieldPtr q = Field::rationals();
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coeff(-7, 7);
  auto rand_rf = [&]() {
    std::vector<Value> cn, cd;
    for (int j = 0; j < 3; ++j) cn.push_back(from_int(q, coeff(rng)));
    do {
      cd.clear();
      for (int j = 0; j < 3; ++j) cd.push_back(from_int(q, coeff(rng)));
    } while (poly_from(q, cd).is_zero());
    return rf_make(poly_from(q, cn), poly_from(q, cd));
  };
  for (int trial = 0; trial < 30; ++trial) {
    RatFunc f = rand_rf(), g = rand_rf();
    for (const RatFunc& h : {rf_add(f, g), rf_mul(f, g), rf_sub(f, g)}) {
      // den monic and coprime to num.
      REQUIRE_FALSE(h.den.is_zero());
      REQUIRE(equal(h.den.c.back(), one(q)));
      REQUIRE(pgcd(h.num, h.den).deg() <= 0);
    }
    // (f+g) - g = f exactly.
    REQUIRE(rf_equal(rf_sub(rf_add(f, g), g), f));
    if (!rf_is_zero(g)) REQUIRE(rf_equal(rf_mul(rf_div(f, g), g), f));
  }

  // Derivative and composition sanity: (f.g)' = (f'.g) g'.
  RatFunc f = parse_ratfunc("(z^2+1)/(z-3)", q, "z");
  RatFunc g = parse_ratfunc("z^2", q, "z");
  RatFunc lhs = rf_deriv(rf_compose(f, g));
  RatFunc rhs = rf_mul(rf_compose(rf_deriv(f), g), rf_deriv(g));
  CHECK(rf_equal(lhs, rhs));
}
