// Branched-cover portraits: the combinatorial shadow of an admissible cover
// f : (S^2, A) -> (S^2, B).
//
// For every b in B the full fiber is recorded as multiplicity slots, each
// optionally labeled by a marked point of A. Marked points are opaque
// symbols; realization by rational maps lives elsewhere. The rank bound
// ell1 + ell2 and the rank-zero admissibility verdict are computed purely
// combinatorially from this data.

#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pullback/error.hpp"

namespace pullback {

struct FiberSlot {
  int mult = 1;
  std::optional<std::string> label;
};

struct Portrait {
  int degree = 1;
  std::vector<std::string> A;
  std::vector<std::string> B;
  // Keyed by elements of B; each value lists the complete fiber.
  std::map<std::string, std::vector<FiberSlot>> fibers;
  bool dynamical = false;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Full structural validation; reports every detected problem rather than
// throwing on the first.
ValidationReport validate_portrait(const Portrait& p);
// Throws InvalidPortrait (first problem in the message) when invalid.
void require_valid(const Portrait& p);

// Sort each fiber by (mult desc, labeled before unlabeled, label asc).
void canonicalize_slots(Portrait& p);

// Count of b in B whose fiber is regular (all multiplicities 1) and carries
// exactly one labeled slot.
int ell1(const Portrait& p);
// Count of unlabeled slots of multiplicity exactly 2 whose fiber contains no
// labeled slot and no other slot of multiplicity >= 2.
int ell2(const Portrait& p);
// min{ell1 + ell2, |A| - 3}.
int rank_lower_bound(const Portrait& p);

// Structured verdict for "can the pullback map be constant", combinatorial
// necessary conditions only.
struct Admissibility {
  bool possible = true;
  // Citation tags of the clauses that block rank zero (empty if possible).
  std::vector<std::string> reasons;
};
Admissibility rank_zero_admissible(const Portrait& p);

// Portrait of the composite cover g . f : (S^2,A) -> (S^2,B) where
// f : (A, C) and g : (C, B). Lifts each slot of g through the fibers of f;
// fibers of f over unlabeled middle points are implicitly regular.
Portrait compose_portraits(const Portrait& f, const Portrait& g);

// JSON round trip. Schema:
//   {"degree": int, "A": [sym], "B": [sym], "dynamical": bool,
//    "fibers": {b: [{"mult": int, "label": sym|null}]}}
// Unknown fields are rejected; the result is validated.
nlohmann::json portrait_to_json(const Portrait& p);
Portrait portrait_from_json(const nlohmann::json& j);

// Marked-orbit map a -> the element of B whose fiber holds a's slot.
std::map<std::string, std::string> marked_point_map(const Portrait& p);

// Symbols of B that are critical values (fiber has a slot of mult >= 2).
std::vector<std::string> critical_values(const Portrait& p);

bool portraits_equal(const Portrait& a, const Portrait& b);

}  // namespace pullback
