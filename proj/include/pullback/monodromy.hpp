// Permutation monodromy of covers branched over three points: validation
// (product identity, transitivity, genus, passport), deck groups by
// brute-force centralizer, exhaustive enumeration of triples with a given
// passport up to simultaneous conjugation, the shared-cycle criterion for
// four labels, and the constancy obstruction combining a portrait with the
// monodromy realizations of its passport.

#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "pullback/portrait.hpp"

namespace pullback {

// A permutation of {1..d} in one-line notation: perm[i] is the 0-based image
// of i. Composition is right-to-left: (a then b) means apply a first.
using Perm = std::vector<int>;

Perm perm_identity(int d);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer(inner(x))
Perm perm_inverse(const Perm& p);
// Cycles of length >= 2, 1-based, each rotated to start at its least element,
// sorted by first element.
std::vector<std::vector<int>> perm_cycles(const Perm& p);
// Build from 1-based cycles; InvalidTriple on overlap or out-of-range.
Perm perm_from_cycles(int d, const std::vector<std::vector<int>>& cycles);
// Cycle type including fixed points, sorted descending.
std::vector<int> perm_cycle_type(const Perm& p);

struct PermutationTriple {
  int degree = 0;
  Perm s0, s1, s_inf;
};

struct TripleReport {
  bool product_identity = false;
  bool transitive = false;
  int genus = 0;
  std::vector<std::vector<int>> passport;  // cycle types of s0, s1, s_inf
};

// Product identity s0 (s1 (s_inf (x))) = x, transitivity of <s0, s1, s_inf>,
// genus from 2 - 2g = 2d - sum over the three permutations of (d - #cycles),
// and the passport.
TripleReport validate_triple(const PermutationTriple& t);

// Centralizer of <s0, s1> in the symmetric group, by scanning all d!
// permutations. NotTransitive / InvalidTriple when the preconditions fail;
// DegreeTooLarge for d > 8.
std::vector<Perm> deck_group(const PermutationTriple& t);

// All transitive product-identity triples whose cycle types match the given
// passport (three entries; entries are padded with fixed points up to d),
// up to simultaneous conjugation, in a deterministic canonical order.
// DegreeTooLarge for d > 6; InvalidTriple for a malformed passport.
std::vector<PermutationTriple> enumerate_triples(
    int d, const std::vector<std::vector<int>>& passport);

// True iff each of the three permutations has a cycle containing at least
// three of the four given labels (1-based, distinct). InvalidTriple when the
// triple is not a valid genus-zero transitive cover or labels are bad.
bool prop45_check(const PermutationTriple& t, const std::vector<int>& pts);

enum class ObstructionVerdict { NotConstant, Unobstructed };

struct ObstructionReport {
  ObstructionVerdict verdict = ObstructionVerdict::Unobstructed;
  int marked_in_critical_fibers = 0;
  bool used_deck_argument = false;
  std::string detail;
};

// Constancy obstruction for a three-critical-value portrait: NotConstant when
// at least three marked points lie in fibers over critical values, or when
// exactly two do and every monodromy realization in `triples` has a trivial
// deck group. HypothesesUnmet when the portrait does not have exactly three
// critical values, has fewer than four marked points, or maps all marked
// points into the critical values.
ObstructionReport belyi_obstruction(const Portrait& p,
                                    const std::vector<PermutationTriple>& triples);

nlohmann::json triple_to_json(const PermutationTriple& t);
PermutationTriple triple_from_json(const nlohmann::json& j);

}  // namespace pullback
