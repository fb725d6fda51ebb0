// Postcritical dynamics: the functional graph of f restricted to its marked
// orbit, the marked-vs-critical-value counting bound with its equality
// characterization, the constant-pullback filter pipeline, and exhaustive
// small-case portrait enumeration.

#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "pullback/portrait.hpp"

namespace pullback {

struct FunctionalGraph {
  std::vector<std::string> vertices;           // the postcritical set
  std::map<std::string, std::string> edge;     // v -> f(v), total on vertices
  std::set<std::string> critical_value_marks;  // the critical values
};

// Graph of f on the marked set of a valid dynamical portrait: edge a -> b
// iff a labels a slot over b; marks = critical values.
// NotDynamical if the portrait is not dynamical; NotPostcriticallyClosed if
// some vertex is unreachable from the marks.
FunctionalGraph build_graph(const Portrait& p);

// Cycle-and-trees decomposition of one weakly connected component.
struct Component {
  std::vector<std::string> cycle;  // in cyclic order, least vertex first
  // For every vertex (on or off the cycle): its in-neighbors that are not
  // cycle vertices, sorted. Rooted-tree structure hangs off cycle vertices.
  std::map<std::string, std::vector<std::string>> tree_children;
};
std::vector<Component> decompose(const FunctionalGraph& g);

// The counting bound |P| <= 2|V| under the indegree hypothesis (every
// unmarked vertex has indegree >= 2), with the equality characterization
// evaluated independently by cardinality and by structure; the two must
// agree (Internal error otherwise). HypothesisViolated when the indegree
// hypothesis fails.
struct Prop36Report {
  bool bound_holds = false;
  bool equality = false;
  std::string witness;  // human-readable structure summary
};
Prop36Report check_prop36(const FunctionalGraph& g);

// --- constant-pullback filter ----------------------------------------------

struct FilterOptions {
  // Opt-in filters relying on statements cited without proof in the source
  // literature; default-off so the standard pipeline uses proved bounds only.
  bool use_marked_bound_unpublished = false;
  bool use_polynomial_bound_refined = false;
};

struct FilterResult {
  std::string filter;    // human name
  std::string citation;  // stable obstruction tag
  std::string verdict;   // "not-constant" | "pass" | "skipped"
  std::string detail;
};

struct FilterReport {
  std::vector<FilterResult> filters;  // in pipeline order
  bool not_constant = false;          // verdict: any filter fired
};

// Runs every necessary-condition filter for constancy of the pullback on a
// valid dynamical portrait with at least 4 marked points (TooFewMarked
// otherwise). Verdict NotConstant if any filter proves positive rank.
FilterReport constant_pullback_filter(const Portrait& p,
                                      const FilterOptions& options = {});

nlohmann::json filter_report_to_json(const FilterReport& r);

// --- enumeration ------------------------------------------------------------

struct EnumSpec {
  int degree = 2;
  // Critical slots per critical value (multiplicities >= 2 only); regular
  // slots are implicit. One inner list per critical value.
  std::vector<std::vector<int>> critical_profile;
  int num_postcritical = 3;
  // Groups of critical-value symbols identified under swapping (quotient by
  // the product of symmetric groups on these groups).
  std::vector<std::vector<std::string>> swap_classes;
  // Keep only portraits the constant-pullback filter leaves unobstructed.
  bool apply_constancy_filter = false;
  // Require f(v) to lie on a periodic cycle for every critical value v.
  bool critical_value_images_periodic = false;
};

EnumSpec enum_spec_from_json(const nlohmann::json& j);
nlohmann::json enum_spec_to_json(const EnumSpec& s);

// All valid dynamical portraits matching the spec, deduplicated up to
// minimal-symbol relabeling of unmarked orbit symbols and, when swap_classes
// are given, up to swapping those critical values. Critical values are named
// v1..vk in profile order, remaining orbit points t1..tm. Deterministic
// order. BudgetExceeded if degree > 6 or num_postcritical > 6.
std::vector<Portrait> enumerate_portraits(const EnumSpec& spec);

}  // namespace pullback
