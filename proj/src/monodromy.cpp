#include "pullback/monodromy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

namespace pullback {

namespace {

void require_perm(const Perm& p, int d) {
  if (static_cast<int>(p.size()) != d)
    fail(ErrorKind::InvalidTriple, "permutation has the wrong degree");
  std::vector<bool> seen(static_cast<size_t>(d), false);
  for (int v : p) {
    if (v < 0 || v >= d || seen[static_cast<size_t>(v)])
      fail(ErrorKind::InvalidTriple, "not a permutation");
    seen[static_cast<size_t>(v)] = true;
  }
}

int cycle_count(const Perm& p) {
  const int d = static_cast<int>(p.size());
  std::vector<bool> seen(static_cast<size_t>(d), false);
  int n = 0;
  for (int i = 0; i < d; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    ++n;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      j = p[static_cast<size_t>(j)];
    }
  }
  return n;
}

bool is_transitive(const std::vector<const Perm*>& gens, int d) {
  if (d == 0) return false;
  std::vector<bool> seen(static_cast<size_t>(d), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Perm* g : gens) {
      int w = (*g)[static_cast<size_t>(v)];
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == d;
}

bool commutes(const Perm& a, const Perm& b) {
  return perm_compose(a, b) == perm_compose(b, a);
}

// Conjugate p by relabeling r: the permutation r p r^{-1}.
Perm conjugate(const Perm& p, const Perm& r) {
  Perm out(p.size());
  for (size_t i = 0; i < p.size(); ++i)
    out[static_cast<size_t>(r[i])] = r[static_cast<size_t>(p[i])];
  return out;
}

// Lexicographically least (s0, s1) under simultaneous conjugation; s_inf is
// determined by the product identity, so two generators suffice as the key.
std::vector<int> canonical_key(const PermutationTriple& t) {
  const int d = t.degree;
  Perm r(static_cast<size_t>(d));
  std::iota(r.begin(), r.end(), 0);
  std::vector<int> best;
  do {
    Perm a = conjugate(t.s0, r);
    Perm b = conjugate(t.s1, r);
    std::vector<int> key;
    key.reserve(2 * static_cast<size_t>(d));
    key.insert(key.end(), a.begin(), a.end());
    key.insert(key.end(), b.begin(), b.end());
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(r.begin(), r.end()));
  return best;
}

}  // namespace

Perm perm_identity(int d) {
  Perm p(static_cast<size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
  if (outer.size() != inner.size())
    fail(ErrorKind::InvalidTriple, "composing permutations of different degree");
  Perm out(outer.size());
  for (size_t i = 0; i < outer.size(); ++i)
    out[i] = outer[static_cast<size_t>(inner[i])];
  return out;
}

Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (size_t i = 0; i < p.size(); ++i)
    out[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return out;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
  const int d = static_cast<int>(p.size());
  std::vector<bool> seen(static_cast<size_t>(d), false);
  std::vector<std::vector<int>> cycles;
  for (int i = 0; i < d; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    std::vector<int> cyc;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      cyc.push_back(j + 1);
      j = p[static_cast<size_t>(j)];
    }
    if (cyc.size() >= 2) cycles.push_back(std::move(cyc));
  }
  return cycles;
}

Perm perm_from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
  if (d < 1) fail(ErrorKind::InvalidTriple, "degree must be positive");
  Perm p = perm_identity(d);
  std::vector<bool> used(static_cast<size_t>(d), false);
  for (const auto& cyc : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      int a = cyc[i];
      int b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || a > d || b < 1 || b > d)
        fail(ErrorKind::InvalidTriple, "cycle entry out of range");
      if (used[static_cast<size_t>(a - 1)])
        fail(ErrorKind::InvalidTriple, "cycles overlap");
      used[static_cast<size_t>(a - 1)] = true;
      p[static_cast<size_t>(a - 1)] = b - 1;
    }
  }
  require_perm(p, d);
  return p;
}

std::vector<int> perm_cycle_type(const Perm& p) {
  const int d = static_cast<int>(p.size());
  std::vector<bool> seen(static_cast<size_t>(d), false);
  std::vector<int> type;
  for (int i = 0; i < d; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    int len = 0;
    int j = i;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      ++len;
      j = p[static_cast<size_t>(j)];
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

TripleReport validate_triple(const PermutationTriple& t) {
  require_perm(t.s0, t.degree);
  require_perm(t.s1, t.degree);
  require_perm(t.s_inf, t.degree);
  TripleReport r;
  Perm prod = perm_compose(t.s0, perm_compose(t.s1, t.s_inf));
  r.product_identity = prod == perm_identity(t.degree);
  r.transitive = is_transitive({&t.s0, &t.s1, &t.s_inf}, t.degree);
  int branching = 0;
  for (const Perm* s : {&t.s0, &t.s1, &t.s_inf})
    branching += t.degree - cycle_count(*s);
  // 2 - 2g = 2d - branching.
  r.genus = (2 - (2 * t.degree - branching)) / 2;
  r.passport = {perm_cycle_type(t.s0), perm_cycle_type(t.s1),
                perm_cycle_type(t.s_inf)};
  return r;
}

std::vector<Perm> deck_group(const PermutationTriple& t) {
  if (t.degree > 8)
    fail(ErrorKind::DegreeTooLarge,
         "deck groups are computed by brute force only for degree <= 8");
  TripleReport r = validate_triple(t);
  if (!r.product_identity)
    fail(ErrorKind::InvalidTriple, "triple product is not the identity");
  if (!r.transitive)
    fail(ErrorKind::NotTransitive, "the cover is not connected");
  std::vector<Perm> out;
  Perm p = perm_identity(t.degree);
  do {
    if (commutes(p, t.s0) && commutes(p, t.s1)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<PermutationTriple> enumerate_triples(
    int d, const std::vector<std::vector<int>>& passport) {
  if (d > 6)
    fail(ErrorKind::DegreeTooLarge,
         "exhaustive triple enumeration is limited to degree <= 6");
  if (d < 1 || passport.size() != 3)
    fail(ErrorKind::InvalidTriple, "passport must list exactly three cycle types");
  // Pad each cycle type with fixed points up to degree d.
  std::vector<std::vector<int>> want;
  for (const auto& entry : passport) {
    int sum = 0;
    std::vector<int> type = entry;
    for (int len : type) {
      if (len < 1) fail(ErrorKind::InvalidTriple, "cycle lengths must be >= 1");
      sum += len;
    }
    if (sum > d)
      fail(ErrorKind::InvalidTriple, "cycle type exceeds the degree");
    for (; sum < d; ++sum) type.push_back(1);
    std::sort(type.rbegin(), type.rend());
    want.push_back(std::move(type));
  }

  // All permutations of each required cycle type.
  std::vector<Perm> of_type0, of_type1;
  Perm p = perm_identity(d);
  do {
    if (perm_cycle_type(p) == want[0]) of_type0.push_back(p);
    if (perm_cycle_type(p) == want[1]) of_type1.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, PermutationTriple>> found;
  for (const Perm& s0 : of_type0)
    for (const Perm& s1 : of_type1) {
      Perm s_inf = perm_inverse(perm_compose(s0, s1));
      if (perm_cycle_type(s_inf) != want[2]) continue;
      if (!is_transitive({&s0, &s1}, d)) continue;
      PermutationTriple t{d, s0, s1, s_inf};
      std::vector<int> key = canonical_key(t);
      if (seen.insert(key).second) found.emplace_back(std::move(key), t);
    }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PermutationTriple> out;
  for (auto& [key, t] : found) out.push_back(std::move(t));
  return out;
}

bool prop45_check(const PermutationTriple& t, const std::vector<int>& pts) {
  TripleReport r = validate_triple(t);
  if (!r.product_identity || !r.transitive || r.genus != 0)
    fail(ErrorKind::InvalidTriple,
         "expected a transitive genus-zero triple with identity product");
  if (pts.size() != 4)
    fail(ErrorKind::InvalidTriple, "exactly four labels required");
  std::set<int> labels(pts.begin(), pts.end());
  if (labels.size() != 4)
    fail(ErrorKind::InvalidTriple, "labels must be distinct");
  for (int v : pts)
    if (v < 1 || v > t.degree)
      fail(ErrorKind::InvalidTriple, "label out of range");

  for (const Perm* s : {&t.s0, &t.s1, &t.s_inf}) {
    // Cycles including fixed points: walk every orbit.
    std::vector<bool> seen(static_cast<size_t>(t.degree), false);
    bool found = false;
    for (int i = 0; i < t.degree && !found; ++i) {
      if (seen[static_cast<size_t>(i)]) continue;
      int in_cycle = 0;
      int j = i;
      while (!seen[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = true;
        if (labels.count(j + 1)) ++in_cycle;
        j = (*s)[static_cast<size_t>(j)];
      }
      if (in_cycle >= 3) found = true;
    }
    if (!found) return false;
  }
  return true;
}

ObstructionReport belyi_obstruction(
    const Portrait& p, const std::vector<PermutationTriple>& triples) {
  require_valid(p);
  std::vector<std::string> cv = critical_values(p);
  if (cv.size() != 3)
    fail(ErrorKind::HypothesesUnmet,
         "the obstruction applies to covers with exactly three critical values");
  if (p.A.size() < 4)
    fail(ErrorKind::HypothesesUnmet, "need at least four marked points");
  std::set<std::string> cvset(cv.begin(), cv.end());
  std::map<std::string, std::string> to_image = marked_point_map(p);
  bool some_outside = false;
  for (const auto& [a, b] : to_image)
    if (!cvset.count(b)) some_outside = true;
  if (!some_outside)
    fail(ErrorKind::HypothesesUnmet,
         "every marked point maps into the critical values");

  ObstructionReport rep;
  int count = 0;
  for (const std::string& b : cv)
    for (const FiberSlot& s : p.fibers.at(b))
      if (s.label) ++count;
  rep.marked_in_critical_fibers = count;
  if (count >= 3) {
    rep.verdict = ObstructionVerdict::NotConstant;
    rep.detail =
        "at least three marked points lie over critical values, which a "
        "constant pullback would force onto a single cross-ratio";
    return rep;
  }
  if (count == 2 && !triples.empty()) {
    bool all_trivial = true;
    for (const PermutationTriple& t : triples)
      if (deck_group(t).size() != 1) all_trivial = false;
    if (all_trivial) {
      rep.verdict = ObstructionVerdict::NotConstant;
      rep.used_deck_argument = true;
      rep.detail =
          "two marked points lie over critical values and no monodromy "
          "realization admits a nontrivial deck transformation";
      return rep;
    }
  }
  rep.detail = "no obstruction from marked points over critical values";
  return rep;
}

nlohmann::json triple_to_json(const PermutationTriple& t) {
  nlohmann::json j;
  j["degree"] = t.degree;
  j["sigma0"] = perm_cycles(t.s0);
  j["sigma1"] = perm_cycles(t.s1);
  j["sigma_inf"] = perm_cycles(t.s_inf);
  return j;
}

PermutationTriple triple_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorKind::InvalidTriple, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "degree" && key != "sigma0" && key != "sigma1" &&
        key != "sigma_inf")
      fail(ErrorKind::InvalidTriple, "unknown field: " + key);
  }
  if (!j.contains("degree") || !j.contains("sigma0") || !j.contains("sigma1") ||
      !j.contains("sigma_inf"))
    fail(ErrorKind::InvalidTriple, "missing field");
  PermutationTriple t;
  t.degree = j.at("degree").get<int>();
  auto cycles = [&](const char* key) {
    return perm_from_cycles(
        t.degree, j.at(key).get<std::vector<std::vector<int>>>());
  };
  t.s0 = cycles("sigma0");
  t.s1 = cycles("sigma1");
  t.s_inf = cycles("sigma_inf");
  return t;
}

}  // namespace pullback
