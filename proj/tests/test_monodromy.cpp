// Permutation monodromy: triple validation, deck groups, exhaustive
// enumeration up to simultaneous conjugation, the shared-cycle criterion,
// and the constancy obstruction that combines a portrait with its
// monodromy realizations.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include "pullback/monodromy.hpp"

using namespace pullback;

namespace {

PermutationTriple quartet() {
  PermutationTriple t;
  t.degree = 4;
  t.s0 = perm_from_cycles(4, {{1, 2, 3}});
  t.s1 = perm_from_cycles(4, {{1, 3, 4}});
  t.s_inf = perm_from_cycles(4, {{2, 4, 3}});
  return t;
}

PermutationTriple cyclic3() {
  PermutationTriple t;
  t.degree = 3;
  t.s0 = perm_from_cycles(3, {{1, 2, 3}});
  t.s1 = perm_from_cycles(3, {{1, 3, 2}});
  t.s_inf = perm_identity(3);
  return t;
}

FiberSlot slot(int mult) { return FiberSlot{mult, std::nullopt}; }
FiberSlot slot(int mult, const std::string& label) {
  return FiberSlot{mult, label};
}

Portrait load_fixture(const std::string& name) {
  std::ifstream in(std::string(PULLBACK_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  return portrait_from_json(nlohmann::json::parse(in));
}

bool is_error(const Error& e, ErrorKind k) { return e.kind() == k; }

}  // namespace

TEST_CASE("permutation basics") {
  Perm a = perm_from_cycles(5, {{1, 2, 3}, {4, 5}});
  CHECK(perm_cycles(a) ==
        std::vector<std::vector<int>>({{1, 2, 3}, {4, 5}}));
  CHECK(perm_cycle_type(a) == std::vector<int>({3, 2}));
  CHECK(perm_compose(a, perm_inverse(a)) == perm_identity(5));
  CHECK(perm_compose(perm_inverse(a), a) == perm_identity(5));

  // Right-to-left composition: (a then b)(x) = b(a(x)) is perm_compose(b, a).
  Perm s = perm_from_cycles(3, {{1, 2}});
  Perm t = perm_from_cycles(3, {{2, 3}});
  Perm ts = perm_compose(t, s);  // apply s first
  CHECK(ts[0] == 2);  // 1 -> 2 -> 3 (0-based image 2)

  CHECK(perm_cycle_type(perm_identity(4)) ==
        std::vector<int>({1, 1, 1, 1}));
  CHECK_THROWS_MATCHES(perm_from_cycles(3, {{1, 2}, {2, 3}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return is_error(e, ErrorKind::InvalidTriple);
                       }));
  CHECK_THROWS_MATCHES(perm_from_cycles(3, {{1, 4}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return is_error(e, ErrorKind::InvalidTriple);
                       }));
}

TEST_CASE("triple validation") {
  SECTION("the quartet cover is a genus-zero dessin") {
    TripleReport r = validate_triple(quartet());
    CHECK(r.product_identity);
    CHECK(r.transitive);
    CHECK(r.genus == 0);
    CHECK(r.passport ==
          std::vector<std::vector<int>>({{3, 1}, {3, 1}, {3, 1}}));
  }
  SECTION("the degree-three torus cover has genus one") {
    PermutationTriple t;
    t.degree = 3;
    t.s0 = perm_from_cycles(3, {{1, 2, 3}});
    t.s1 = perm_from_cycles(3, {{1, 2, 3}});
    t.s_inf = perm_from_cycles(3, {{1, 2, 3}});
    TripleReport r = validate_triple(t);
    CHECK(r.product_identity);
    CHECK(r.transitive);
    CHECK(r.genus == 1);
  }
  SECTION("product failure is reported, not thrown") {
    PermutationTriple t;
    t.degree = 3;
    t.s0 = perm_from_cycles(3, {{1, 2}});
    t.s1 = perm_identity(3);
    t.s_inf = perm_identity(3);
    TripleReport r = validate_triple(t);
    CHECK_FALSE(r.product_identity);
  }
  SECTION("intransitive covers are reported") {
    PermutationTriple t;
    t.degree = 4;
    t.s0 = perm_from_cycles(4, {{1, 2}});
    t.s1 = perm_from_cycles(4, {{1, 2}});
    t.s_inf = perm_identity(4);
    TripleReport r = validate_triple(t);
    CHECK(r.product_identity);
    CHECK_FALSE(r.transitive);
  }
}

TEST_CASE("deck groups by centralizer scan") {
  SECTION("cyclic covers have full deck group") {
    std::vector<Perm> deck = deck_group(cyclic3());
    CHECK(deck.size() == 3);
    PermutationTriple t2;
    t2.degree = 2;
    t2.s0 = perm_from_cycles(2, {{1, 2}});
    t2.s1 = perm_from_cycles(2, {{1, 2}});
    t2.s_inf = perm_identity(2);
    CHECK(deck_group(t2).size() == 2);
  }
  SECTION("the quartet cover is rigid") {
    std::vector<Perm> deck = deck_group(quartet());
    REQUIRE(deck.size() == 1);
    CHECK(deck[0] == perm_identity(4));
  }
  SECTION("group structure") {
    PermutationTriple t = cyclic3();
    std::vector<Perm> deck = deck_group(t);
    std::set<Perm> elems(deck.begin(), deck.end());
    CHECK(elems.count(perm_identity(3)) == 1);
    for (const Perm& g : deck) {
      CHECK(elems.count(perm_inverse(g)) == 1);
      for (const Perm& h : deck) CHECK(elems.count(perm_compose(g, h)) == 1);
      // Deck transformations commute with the monodromy generators.
      CHECK(perm_compose(g, t.s0) == perm_compose(t.s0, g));
      CHECK(perm_compose(g, t.s1) == perm_compose(t.s1, g));
    }
    // A free action: the order divides the degree.
    CHECK(3 % deck.size() == 0);
  }
  SECTION("preconditions") {
    PermutationTriple t;
    t.degree = 4;
    t.s0 = perm_from_cycles(4, {{1, 2}});
    t.s1 = perm_from_cycles(4, {{1, 2}});
    t.s_inf = perm_identity(4);
    CHECK_THROWS_MATCHES(deck_group(t), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return is_error(e, ErrorKind::NotTransitive);
                         }));
    PermutationTriple big;
    big.degree = 9;
    big.s0 = perm_from_cycles(9, {{1, 2, 3, 4, 5, 6, 7, 8, 9}});
    big.s1 = perm_inverse(big.s0);
    big.s_inf = perm_identity(9);
    CHECK_THROWS_MATCHES(deck_group(big), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return is_error(e, ErrorKind::DegreeTooLarge);
                         }));
  }
}

TEST_CASE("exhaustive triple enumeration up to conjugation") {
  struct Case {
    int d;
    std::vector<std::vector<int>> passport;
    size_t count;
    std::vector<size_t> deck_orders;
  };
  std::vector<Case> cases{
      {3, {{3}, {2, 1}, {2, 1}}, 1, {1}},
      {3, {{3}, {3}, {3}}, 1, {3}},
      {3, {{3}, {3}, {1, 1, 1}}, 1, {3}},
      {3, {{2, 1}, {2, 1}, {2, 1}}, 0, {}},
      {2, {{2}, {2}, {1, 1}}, 1, {2}},
      {2, {{2}, {1, 1}, {1, 1}}, 0, {}},
      {4, {{3, 1}, {3, 1}, {3, 1}}, 1, {1}},
  };
  for (const Case& c : cases) {
    INFO("degree " << c.d);
    std::vector<PermutationTriple> ts = enumerate_triples(c.d, c.passport);
    REQUIRE(ts.size() == c.count);
    for (size_t i = 0; i < ts.size(); ++i) {
      TripleReport r = validate_triple(ts[i]);
      CHECK(r.product_identity);
      CHECK(r.transitive);
      CHECK(r.passport[0] == c.passport[0]);
      CHECK(deck_group(ts[i]).size() == c.deck_orders[i]);
    }
  }
  SECTION("padding with fixed points is implicit") {
    // Entries shorter than the degree gain fixed points: {3},{2},{2} at
    // degree 3 means {3},{2,1},{2,1}.
    CHECK(enumerate_triples(3, {{3}, {2}, {2}}).size() == 1);
  }
  SECTION("guards") {
    CHECK_THROWS_MATCHES(
        enumerate_triples(7, {{7}, {7}, {7}}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::DegreeTooLarge);
        }));
    CHECK_THROWS_MATCHES(
        enumerate_triples(3, {{4}, {2, 1}, {2, 1}}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::InvalidTriple);
        }));
    CHECK_THROWS_MATCHES(
        enumerate_triples(3, {{3}, {2, 1}}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::InvalidTriple);
        }));
  }
}

TEST_CASE("shared-cycle criterion on four labels") {
  SECTION("the quartet satisfies it") {
    CHECK(prop45_check(quartet(), {1, 2, 3, 4}));
  }
  SECTION("the Klein cover does not") {
    PermutationTriple t;
    t.degree = 4;
    t.s0 = perm_from_cycles(4, {{1, 2}, {3, 4}});
    t.s1 = perm_from_cycles(4, {{1, 3}, {2, 4}});
    t.s_inf = perm_from_cycles(4, {{1, 4}, {2, 3}});
    REQUIRE(validate_triple(t).product_identity);
    CHECK_FALSE(prop45_check(t, {1, 2, 3, 4}));
  }
  SECTION("bad inputs") {
    CHECK_THROWS_MATCHES(
        prop45_check(quartet(), {1, 2, 3, 3}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::InvalidTriple);
        }));
    CHECK_THROWS_MATCHES(
        prop45_check(quartet(), {1, 2, 3, 5}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::InvalidTriple);
        }));
    PermutationTriple bad = quartet();
    bad.s_inf = perm_identity(4);  // breaks the product identity
    CHECK_THROWS_MATCHES(
        prop45_check(bad, {1, 2, 3, 4}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::InvalidTriple);
        }));
  }
}

TEST_CASE("constancy obstruction for three-critical-value portraits") {
  SECTION("two marked points in critical fibers plus rigid realizations") {
    // Every portrait in the cubic table has exactly two marked points mapping
    // to critical values, and every monodromy realization of the passport
    // [3],[2,1],[2,1] has a trivial deck group.
    std::vector<PermutationTriple> ts =
        enumerate_triples(3, {{3}, {2, 1}, {2, 1}});
    REQUIRE(ts.size() == 1);
    std::ifstream in(std::string(PULLBACK_FIXTURE_DIR) + "/table3.json");
    REQUIRE(in.good());
    nlohmann::json fixture = nlohmann::json::parse(in);
    for (const auto& pj : fixture) {
      Portrait p = portrait_from_json(pj);
      ObstructionReport r = belyi_obstruction(p, ts);
      CHECK(r.verdict == ObstructionVerdict::NotConstant);
      CHECK(r.marked_in_critical_fibers == 2);
      CHECK(r.used_deck_argument);
    }
  }
  SECTION("three marked points in critical fibers decide directly") {
    Portrait p;
    p.degree = 3;
    p.A = {"v1", "v2", "v3", "t"};
    p.B = p.A;
    p.dynamical = true;
    p.fibers["v1"] = {slot(3, "v3")};
    p.fibers["v2"] = {slot(2, "v1"), slot(1)};
    p.fibers["v3"] = {slot(2, "v2"), slot(1)};
    p.fibers["t"] = {slot(1, "t"), slot(1), slot(1)};
    REQUIRE(validate_portrait(p).ok);
    ObstructionReport r = belyi_obstruction(p, {});
    CHECK(r.verdict == ObstructionVerdict::NotConstant);
    CHECK(r.marked_in_critical_fibers == 3);
    CHECK_FALSE(r.used_deck_argument);
  }
  SECTION("no marked point in a critical fiber: unobstructed") {
    ObstructionReport r =
        belyi_obstruction(load_fixture("example42_portrait.json"), {});
    CHECK(r.verdict == ObstructionVerdict::Unobstructed);
    CHECK(r.marked_in_critical_fibers == 0);
  }
  SECTION("hypotheses require exactly three critical values") {
    CHECK_THROWS_MATCHES(
        belyi_obstruction(load_fixture("z2i_portrait.json"), {}), Error,
        Catch::Matchers::Predicate<Error>([](const Error& e) {
          return is_error(e, ErrorKind::HypothesesUnmet);
        }));
  }
}

TEST_CASE("triple JSON serialization") {
  std::ifstream in(std::string(PULLBACK_FIXTURE_DIR) + "/quartic_triple.json");
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  PermutationTriple t = triple_from_json(j);
  CHECK(t.degree == 4);
  TripleReport r = validate_triple(t);
  CHECK(r.product_identity);
  CHECK(r.transitive);
  CHECK(triple_to_json(t) == j);

  nlohmann::json bad = j;
  bad["sigma_0"] = bad["sigma0"];
  CHECK_THROWS_AS(triple_from_json(bad), Error);
  nlohmann::json overlap = j;
  overlap["sigma0"] = nlohmann::json::array({{1, 2}, {2, 3}});
  CHECK_THROWS_AS(triple_from_json(overlap), Error);
}
