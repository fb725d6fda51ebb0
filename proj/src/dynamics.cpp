#include "pullback/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace pullback {

namespace {

std::map<std::string, int> indegrees(const FunctionalGraph& g) {
  std::map<std::string, int> in;
  for (const auto& v : g.vertices) in[v] = 0;
  for (const auto& [v, w] : g.edge) in[w] += 1;
  return in;
}

// Vertices lying on some cycle (every functional graph component has one).
std::set<std::string> cycle_vertices(const FunctionalGraph& g) {
  std::set<std::string> on_cycle;
  for (const auto& start : g.vertices) {
    // Follow the orbit |V| steps to land on the cycle, then mark it.
    std::string v = start;
    for (size_t i = 0; i < g.vertices.size(); ++i) v = g.edge.at(v);
    if (on_cycle.count(v)) continue;
    std::string u = v;
    do {
      on_cycle.insert(u);
      u = g.edge.at(u);
    } while (u != v);
  }
  return on_cycle;
}

}  // namespace

FunctionalGraph build_graph(const Portrait& p) {
  require_valid(p);
  if (!p.dynamical)
    fail(ErrorKind::NotDynamical, "portrait is not marked dynamical (A != B)");
  FunctionalGraph g;
  g.vertices = p.A;
  std::sort(g.vertices.begin(), g.vertices.end());
  g.edge = marked_point_map(p);
  for (const auto& v : critical_values(p)) g.critical_value_marks.insert(v);
  // Closure: every vertex reachable from the critical values by iteration
  // (critical values themselves included).
  std::set<std::string> reached(g.critical_value_marks.begin(),
                                g.critical_value_marks.end());
  std::vector<std::string> frontier(reached.begin(), reached.end());
  while (!frontier.empty()) {
    std::string v = frontier.back();
    frontier.pop_back();
    const std::string& w = g.edge.at(v);
    if (reached.insert(w).second) frontier.push_back(w);
  }
  for (const auto& v : g.vertices)
    if (!reached.count(v))
      fail(ErrorKind::NotPostcriticallyClosed,
           "vertex '" + v + "' is not in the forward orbit of any critical value");
  return g;
}

std::vector<Component> decompose(const FunctionalGraph& g) {
  std::set<std::string> on_cycle = cycle_vertices(g);
  // Weakly connected components via union of forward edges.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& v) -> std::string {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    std::string root = find(it->second);
    parent[v] = root;
    return root;
  };
  for (const auto& v : g.vertices) parent[v] = v;
  for (const auto& [v, w] : g.edge) parent[find(v)] = find(w);

  std::map<std::string, Component> comps;
  for (const auto& v : g.vertices) {
    Component& c = comps[find(v)];
    if (on_cycle.count(v)) c.cycle.push_back(v);
  }
  for (const auto& [v, w] : g.edge) {
    if (on_cycle.count(v)) continue;
    comps[find(v)].tree_children[w].push_back(v);
  }
  std::vector<Component> out;
  for (auto& [root, c] : comps) {
    // Rotate the cycle so it starts at its least vertex and follows edges.
    std::sort(c.cycle.begin(), c.cycle.end());
    if (!c.cycle.empty()) {
      std::vector<std::string> ordered;
      std::string v = c.cycle.front();
      do {
        ordered.push_back(v);
        v = g.edge.at(v);
      } while (v != ordered.front());
      c.cycle = ordered;
    }
    for (auto& [v, kids] : c.tree_children) std::sort(kids.begin(), kids.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    return a.cycle < b.cycle;
  });
  return out;
}

Prop36Report check_prop36(const FunctionalGraph& g) {
  std::map<std::string, int> in = indegrees(g);
  for (const auto& v : g.vertices)
    if (!g.critical_value_marks.count(v) && in[v] <= 1)
      fail(ErrorKind::HypothesisViolated,
           "unmarked vertex '" + v + "' has indegree " +
               std::to_string(in[v]) + " (hypothesis needs >= 2)");

  const long P = static_cast<long>(g.vertices.size());
  const long V = static_cast<long>(g.critical_value_marks.size());
  Prop36Report rep;
  rep.bound_holds = (P <= 2 * V);
  bool equality_card = (P == 2 * V);

  // Structural characterization.
  std::set<std::string> on_cycle = cycle_vertices(g);
  bool structural = true;
  std::ostringstream why;
  for (const auto& v : on_cycle)
    if (g.critical_value_marks.count(v)) {
      structural = false;
      why << "cycle vertex '" << v << "' is a critical value; ";
    }
  for (const auto& v : g.vertices) {
    int off_cycle_in = 0;
    for (const auto& [u, w] : g.edge)
      if (w == v && !on_cycle.count(u)) ++off_cycle_in;
    if (on_cycle.count(v)) {
      if (off_cycle_in != 1) {
        structural = false;
        why << "cycle vertex '" << v << "' fed by " << off_cycle_in
            << " tree vertices (need exactly 1); ";
      }
    } else if (g.critical_value_marks.count(v)) {
      if (in[v] != 0) {
        structural = false;
        why << "marked vertex '" << v << "' is not a leaf; ";
      }
    } else {
      if (in[v] != 2) {
        structural = false;
        why << "interior tree vertex '" << v << "' has indegree " << in[v]
            << " (full binary tree needs 2); ";
      }
    }
  }
  // Bulleted orbit conditions: along every forward orbit of a marked vertex,
  // images are never critical values and always have exactly two marked
  // preimages.
  bool bullets = true;
  for (const auto& v : g.critical_value_marks) {
    std::string u = v;
    for (size_t n = 0; n < g.vertices.size(); ++n) {
      u = g.edge.at(u);
      if (g.critical_value_marks.count(u)) bullets = false;
      if (in[u] != 2) bullets = false;
    }
  }
  bool equality_struct = structural && bullets;
  if (equality_card != equality_struct)
    fail(ErrorKind::Internal,
         "equality characterizations disagree: cardinality says " +
             std::to_string(equality_card) + ", structure says " +
             std::to_string(equality_struct) + " (" + why.str() + ")");
  rep.equality = equality_card;
  rep.witness = equality_card ? "binary-tree structure with marked leaves"
                              : (why.str().empty() ? "strict inequality"
                                                   : why.str());
  return rep;
}

// --- constant-pullback filter ----------------------------------------------

FilterReport constant_pullback_filter(const Portrait& p,
                                      const FilterOptions& options) {
  require_valid(p);
  if (!p.dynamical)
    fail(ErrorKind::InvalidPortrait, "filter needs a dynamical portrait");
  if (p.A.size() < 4)
    fail(ErrorKind::TooFewMarked,
         "filter needs at least 4 marked points (moduli space is a point)");
  FunctionalGraph g = build_graph(p);
  std::map<std::string, int> in = indegrees(g);
  std::set<std::string> on_cycle = cycle_vertices(g);

  FilterReport rep;
  auto push = [&](const std::string& name, const std::string& tag, bool fired,
                  bool skipped, const std::string& detail) {
    FilterResult r;
    r.filter = name;
    r.citation = tag;
    r.verdict = skipped ? "skipped" : (fired ? "not-constant" : "pass");
    r.detail = detail;
    if (fired && !skipped) rep.not_constant = true;
    rep.filters.push_back(r);
  };

  const long P = static_cast<long>(p.A.size());
  const long V = static_cast<long>(g.critical_value_marks.size());
  const int l1 = ell1(p), l2 = ell2(p);

  // 1. A regular value with a unique marked preimage forces positive rank.
  push("regular value with unique marked preimage",
       "regular-value-unique-preimage", l1 > 0, false,
       "ell1 = " + std::to_string(l1));

  // 2. The combined lower bound min{ell1+ell2, |P|-3}.
  int bound = rank_lower_bound(p);
  push("rank lower bound", "rank-lower-bound", bound > 0, false,
       "min{ell1+ell2, |P|-3} = " + std::to_string(bound));

  // 3. |P| <= min{2|V|, d+2}.
  bool count_violated = P > std::min(2 * V, static_cast<long>(p.degree) + 2);
  push("marked count bound", "marked-count-bound", count_violated, false,
       "|P| = " + std::to_string(P) + ", 2|V| = " + std::to_string(2 * V) +
           ", d+2 = " + std::to_string(p.degree + 2));

  // 4. A critical value outside f(P) whose fiber holds exactly one critical
  //    slot, of multiplicity 2.
  bool preper = false;
  std::string preper_witness;
  for (const auto& v : g.critical_value_marks) {
    if (in[v] != 0) continue;
    const auto& fiber = p.fibers.at(v);
    int crit_slots = 0;
    bool simple = true;
    for (const auto& s : fiber)
      if (s.mult >= 2) {
        ++crit_slots;
        if (s.mult != 2) simple = false;
      }
    if (crit_slots == 1 && simple) {
      preper = true;
      preper_witness = v;
      break;
    }
  }
  push("preperiodic simple critical value",
       "preperiodic-simple-critical-value", preper, false,
       preper ? "witness critical value '" + preper_witness + "'"
              : "no critical value outside f(P) with a unique simple critical point");

  // 5. All critical values periodic with at least three of them.
  bool all_periodic = true;
  for (const auto& v : g.critical_value_marks)
    if (!on_cycle.count(v)) all_periodic = false;
  bool periodic_fires = (V >= 3) && all_periodic && (P > V);
  push("periodic critical values", "periodic-critical-values", periodic_fires,
       false,
       "|V| = " + std::to_string(V) +
           (all_periodic ? ", all periodic" : ", not all periodic"));

  // 6. Unicritical polynomial shape: two critical values with single
  //    totally-ramified slots, one of them a marked fixed point.
  bool unicritical = false;
  if (V == 2) {
    bool totally_ramified = true;
    bool has_fixed_tr = false;
    for (const auto& v : g.critical_value_marks) {
      const auto& fiber = p.fibers.at(v);
      if (fiber.size() != 1 || fiber[0].mult != p.degree)
        totally_ramified = false;
      else if (fiber[0].label && *fiber[0].label == v)
        has_fixed_tr = true;
    }
    unicritical = totally_ramified && has_fixed_tr;
  }
  push("unicritical polynomial rigidity", "unicritical-local-iso",
       unicritical, false,
       unicritical ? "pullback is a local isomorphism, rank |P|-3 > 0"
                   : "portrait is not of unicritical polynomial shape");

  // 7. Optional: |P| <= |V| + 1 (stated in the literature without published
  //    proof; off by default).
  bool parry_fires = P > V + 1;
  push("marked bound (unpublished refinement)", "marked-bound-unpublished",
       parry_fires, !options.use_marked_bound_unpublished,
       "|P| = " + std::to_string(P) + ", |V|+1 = " + std::to_string(V + 1));

  // 8. Optional: topological polynomials satisfy
  //    |P| <= 2*(#finite critical values) - 1.
  bool is_top_poly = false;
  long finite_cv = V;
  for (const auto& v : g.critical_value_marks) {
    const auto& fiber = p.fibers.at(v);
    if (fiber.size() == 1 && fiber[0].mult == p.degree && fiber[0].label &&
        *fiber[0].label == v) {
      is_top_poly = true;
      finite_cv = V - 1;
      break;
    }
  }
  bool poly_fires = is_top_poly && P > 2 * finite_cv - 1;
  push("topological polynomial bound", "polynomial-bound-refined", poly_fires,
       !options.use_polynomial_bound_refined,
       is_top_poly ? "|P| = " + std::to_string(P) + ", 2*" +
                         std::to_string(finite_cv) + "-1 = " +
                         std::to_string(2 * finite_cv - 1)
                   : "not a topological polynomial portrait");

  return rep;
}

nlohmann::json filter_report_to_json(const FilterReport& r) {
  nlohmann::json j;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : r.filters) {
    nlohmann::json e;
    e["filter"] = f.filter;
    e["citation"] = f.citation;
    e["verdict"] = f.verdict;
    e["detail"] = f.detail;
    arr.push_back(e);
  }
  j["filters"] = arr;
  j["verdict"] = r.not_constant ? "NotConstant" : "Unobstructed";
  return j;
}

// --- enumeration ------------------------------------------------------------

EnumSpec enum_spec_from_json(const nlohmann::json& j) {
  static const std::set<std::string> allowed = {
      "degree", "critical_profile", "num_postcritical", "swap_classes",
      "apply_constancy_filter", "critical_value_images_periodic"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(ErrorKind::Internal,
           "unknown field '" + it.key() + "' in enumeration spec");
  EnumSpec s;
  try {
    s.degree = j.at("degree").get<int>();
    s.critical_profile =
        j.at("critical_profile").get<std::vector<std::vector<int>>>();
    s.num_postcritical = j.at("num_postcritical").get<int>();
    if (j.contains("swap_classes"))
      s.swap_classes =
          j.at("swap_classes").get<std::vector<std::vector<std::string>>>();
    if (j.contains("apply_constancy_filter"))
      s.apply_constancy_filter = j.at("apply_constancy_filter").get<bool>();
    if (j.contains("critical_value_images_periodic"))
      s.critical_value_images_periodic =
          j.at("critical_value_images_periodic").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Internal,
         std::string("malformed enumeration spec: ") + e.what());
  }
  return s;
}

nlohmann::json enum_spec_to_json(const EnumSpec& s) {
  nlohmann::json j;
  j["degree"] = s.degree;
  j["critical_profile"] = s.critical_profile;
  j["num_postcritical"] = s.num_postcritical;
  j["swap_classes"] = s.swap_classes;
  j["apply_constancy_filter"] = s.apply_constancy_filter;
  j["critical_value_images_periodic"] = s.critical_value_images_periodic;
  return j;
}

namespace {

// Serialized canonical key of a portrait. Slot order and the order of the
// marked-point lists are both normalized so renamed copies compare equal.
std::string portrait_key(const Portrait& p) {
  Portrait c = p;
  canonicalize_slots(c);
  std::sort(c.A.begin(), c.A.end());
  std::sort(c.B.begin(), c.B.end());
  return portrait_to_json(c).dump();
}

// Apply a symbol renaming to a portrait.
Portrait rename_portrait(const Portrait& p,
                         const std::map<std::string, std::string>& ren) {
  auto r = [&](const std::string& s) {
    auto it = ren.find(s);
    return it == ren.end() ? s : it->second;
  };
  Portrait out;
  out.degree = p.degree;
  out.dynamical = p.dynamical;
  for (const auto& a : p.A) out.A.push_back(r(a));
  for (const auto& b : p.B) out.B.push_back(r(b));
  for (const auto& [b, fiber] : p.fibers) {
    std::vector<FiberSlot> fs;
    for (const auto& s : fiber) {
      FiberSlot t;
      t.mult = s.mult;
      if (s.label) t.label = r(*s.label);
      fs.push_back(t);
    }
    out.fibers[r(b)] = std::move(fs);
  }
  return out;
}

}  // namespace

std::vector<Portrait> enumerate_portraits(const EnumSpec& spec) {
  if (spec.degree > 6 || spec.num_postcritical > 6)
    fail(ErrorKind::BudgetExceeded,
         "enumeration limited to degree <= 6 and |P| <= 6");
  if (spec.degree < 1 || spec.num_postcritical < 3) return {};

  const int d = spec.degree;
  const int k = static_cast<int>(spec.critical_profile.size());
  const int n = spec.num_postcritical;
  const int m = n - k;  // non-critical-value orbit points
  if (m < 0) return {};

  // Riemann-Hurwitz feasibility and per-fiber capacity.
  long branching = 0;
  std::vector<int> crit_sum(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int mu : spec.critical_profile[i]) {
      if (mu < 2) return {};  // profile lists critical slots only
      branching += mu - 1;
      crit_sum[i] += mu;
    }
    if (crit_sum[i] > d) return {};
  }
  if (branching != 2L * d - 2) return {};

  std::vector<std::string> verts;
  for (int i = 1; i <= k; ++i) verts.push_back("v" + std::to_string(i));
  for (int i = 1; i <= m; ++i)
    verts.push_back(m == 1 ? std::string("t") : "t" + std::to_string(i));

  // Slot capacity of each fiber (labels may occupy any slot).
  std::vector<int> capacity(n, d);
  for (int i = 0; i < k; ++i)
    capacity[i] =
        static_cast<int>(spec.critical_profile[i].size()) + (d - crit_sum[i]);

  // Enumerate all edge maps P -> P.
  std::set<std::string> classes;  // canonical keys seen so far
  std::vector<int> edge(n, 0);
  std::vector<std::string> keys_in_order;
  for (;;) {
    // --- test this edge assignment
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[edge[v]] += 1;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if (indeg[v] > capacity[v]) ok = false;
    if (ok) {
      // Closure: every vertex reachable from a critical value.
      std::vector<bool> reached(n, false);
      std::vector<int> stack;
      for (int i = 0; i < k; ++i) {
        reached[i] = true;
        stack.push_back(i);
      }
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int w = edge[v];
        if (!reached[w]) {
          reached[w] = true;
          stack.push_back(w);
        }
      }
      for (int v = 0; v < n && ok; ++v)
        if (!reached[v]) ok = false;
    }
    if (ok && spec.critical_value_images_periodic) {
      // f(v) must lie on a cycle for each critical value v.
      auto on_cycle = [&](int start) {
        int v = start;
        for (int i = 0; i < n; ++i) v = edge[v];
        // v is now on the cycle of start's component; start's image is
        // periodic iff it equals some iterate of the cycle.
        int u = v;
        do {
          if (u == start) return true;
          u = edge[u];
        } while (u != v);
        return false;
      };
      for (int i = 0; i < k && ok; ++i)
        if (!on_cycle(edge[i])) ok = false;
    }
    if (ok) {
      // Build the canonical portrait: labels fill regular slots first.
      Portrait p;
      p.degree = d;
      p.A = verts;
      p.B = verts;
      p.dynamical = true;
      for (int b = 0; b < n; ++b) {
        std::vector<std::string> incoming;
        for (int v = 0; v < n; ++v)
          if (edge[v] == b) incoming.push_back(verts[v]);
        std::sort(incoming.begin(), incoming.end());
        std::vector<FiberSlot> fiber;
        std::vector<int> mults;  // regular first, then critical ascending
        int regular = d - (b < k ? crit_sum[b] : 0);
        for (int i = 0; i < regular; ++i) mults.push_back(1);
        if (b < k) {
          std::vector<int> crit = spec.critical_profile[b];
          std::sort(crit.begin(), crit.end());
          for (int mu : crit) mults.push_back(mu);
        }
        size_t li = 0;
        for (int mu : mults) {
          FiberSlot s;
          s.mult = mu;
          if (li < incoming.size()) s.label = incoming[li++];
          fiber.push_back(s);
        }
        if (li != incoming.size())
          fail(ErrorKind::Internal, "fiber capacity bookkeeping failed");
        p.fibers[verts[b]] = std::move(fiber);
      }
      canonicalize_slots(p);
      ValidationReport vr = validate_portrait(p);
      if (!vr.ok)
        fail(ErrorKind::Internal,
             "enumerated portrait invalid: " + vr.problems.front());
      if (!spec.apply_constancy_filter || p.A.size() < 4 ||
          !constant_pullback_filter(p).not_constant) {
        // Canonical key: minimize over relabelings of t-symbols and over
        // the designated critical-value swaps.
        std::vector<std::string> tsyms(verts.begin() + k, verts.end());
        std::vector<int> perm(m);
        std::string best;
        // Swap-class permutations: generate all products of per-class
        // permutations acting on critical-value symbols.
        std::vector<std::map<std::string, std::string>> swaps;
        swaps.push_back({});
        for (const auto& cls : spec.swap_classes) {
          std::vector<std::string> sorted_cls = cls;
          std::sort(sorted_cls.begin(), sorted_cls.end());
          std::vector<std::string> permuted = sorted_cls;
          std::vector<std::map<std::string, std::string>> extended;
          do {
            for (const auto& base : swaps) {
              auto entry = base;
              for (size_t i = 0; i < sorted_cls.size(); ++i)
                entry[sorted_cls[i]] = permuted[i];
              extended.push_back(entry);
            }
          } while (std::next_permutation(permuted.begin(), permuted.end()));
          swaps = std::move(extended);
        }
        for (const auto& sw : swaps) {
          std::iota(perm.begin(), perm.end(), 0);
          do {
            std::map<std::string, std::string> ren = sw;
            for (int i = 0; i < m; ++i) ren[tsyms[i]] = tsyms[perm[i]];
            std::string key = portrait_key(rename_portrait(p, ren));
            if (best.empty() || key < best) best = key;
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        if (classes.insert(best).second) keys_in_order.push_back(best);
      }
    }
    // --- advance the odometer
    int pos = 0;
    while (pos < n) {
      if (++edge[pos] < n) break;
      edge[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }

  std::sort(keys_in_order.begin(), keys_in_order.end());
  std::vector<Portrait> out;
  // The canonical key is itself a serialized portrait: the minimal renamed
  // form represents its class.
  for (const auto& key : keys_in_order)
    out.push_back(portrait_from_json(nlohmann::json::parse(key)));
  return out;
}

}  // namespace pullback
