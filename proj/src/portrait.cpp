#include "pullback/portrait.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pullback {

namespace {

bool slot_less(const FiberSlot& x, const FiberSlot& y) {
  if (x.mult != y.mult) return x.mult > y.mult;
  bool xl = x.label.has_value(), yl = y.label.has_value();
  if (xl != yl) return xl;  // labeled slots first
  if (xl) return *x.label < *y.label;
  return false;
}

}  // namespace

void canonicalize_slots(Portrait& p) {
  for (auto& [b, fiber] : p.fibers)
    std::sort(fiber.begin(), fiber.end(), slot_less);
}

ValidationReport validate_portrait(const Portrait& p) {
  ValidationReport rep;
  auto problem = [&](const std::string& s) {
    rep.ok = false;
    rep.problems.push_back(s);
  };

  if (p.degree < 1) problem("degree must be >= 1");
  if (p.A.size() < 3) problem("|A| must be >= 3");
  if (p.B.size() < 3) problem("|B| must be >= 3");

  std::set<std::string> aset(p.A.begin(), p.A.end());
  std::set<std::string> bset(p.B.begin(), p.B.end());
  if (aset.size() != p.A.size()) problem("duplicate symbols in A");
  if (bset.size() != p.B.size()) problem("duplicate symbols in B");

  // Fibers keyed exactly by B.
  for (const auto& b : p.B)
    if (!p.fibers.count(b)) problem("missing fiber over '" + b + "'");
  for (const auto& [b, fiber] : p.fibers) {
    if (!bset.count(b)) problem("fiber over symbol '" + b + "' not in B");
    (void)fiber;
  }

  long total_branching = 0;
  std::map<std::string, int> label_uses;
  for (const auto& [b, fiber] : p.fibers) {
    if (fiber.empty()) problem("empty fiber over '" + b + "'");
    long mult_sum = 0;
    for (const auto& s : fiber) {
      if (s.mult < 1) problem("slot multiplicity < 1 over '" + b + "'");
      mult_sum += s.mult;
      total_branching += s.mult - 1;
      if (s.label) {
        if (!aset.count(*s.label))
          problem("slot label '" + *s.label + "' not in A");
        label_uses[*s.label] += 1;
      }
    }
    if (mult_sum != p.degree)
      problem("fiber over '" + b + "' has multiplicity sum " +
              std::to_string(mult_sum) + ", expected degree " +
              std::to_string(p.degree));
  }
  for (const auto& a : p.A) {
    int uses = label_uses.count(a) ? label_uses[a] : 0;
    if (uses != 1)
      problem("marked point '" + a + "' labels " + std::to_string(uses) +
              " slots, expected exactly 1");
  }
  if (total_branching != 2L * p.degree - 2)
    problem("total branching " + std::to_string(total_branching) +
            " violates Riemann-Hurwitz (expected " +
            std::to_string(2L * p.degree - 2) + ")");

  if (p.dynamical && aset != bset)
    problem("dynamical portrait requires A and B to be the same symbol set");

  return rep;
}

void require_valid(const Portrait& p) {
  ValidationReport rep = validate_portrait(p);
  if (!rep.ok) fail(ErrorKind::InvalidPortrait, rep.problems.front());
}

int ell1(const Portrait& p) {
  int count = 0;
  for (const auto& [b, fiber] : p.fibers) {
    bool regular = true;
    int labeled = 0;
    for (const auto& s : fiber) {
      if (s.mult != 1) regular = false;
      if (s.label) ++labeled;
    }
    if (regular && labeled == 1) ++count;
  }
  return count;
}

int ell2(const Portrait& p) {
  int count = 0;
  for (const auto& [b, fiber] : p.fibers) {
    bool any_label = false;
    int critical_slots = 0;
    for (const auto& s : fiber) {
      if (s.label) any_label = true;
      if (s.mult >= 2) ++critical_slots;
    }
    if (any_label || critical_slots != 1) continue;
    for (const auto& s : fiber)
      if (s.mult == 2 && !s.label) ++count;  // the unique critical slot
  }
  return count;
}

int rank_lower_bound(const Portrait& p) {
  int cap = static_cast<int>(p.A.size()) - 3;
  if (cap < 0) cap = 0;
  return std::min(ell1(p) + ell2(p), cap);
}

Admissibility rank_zero_admissible(const Portrait& p) {
  require_valid(p);
  Admissibility adm;
  auto block = [&](const std::string& tag) {
    adm.possible = false;
    adm.reasons.push_back(tag);
  };
  if (rank_lower_bound(p) > 0) block("rank-lower-bound");
  if (static_cast<long>(p.A.size()) > p.degree + 2) block("degree-bound");
  for (const auto& [b, fiber] : p.fibers) {
    bool any_label = false;
    int critical_slots = 0;
    bool all_crit_mult2 = true;
    for (const auto& s : fiber) {
      if (s.label) any_label = true;
      if (s.mult >= 2) {
        ++critical_slots;
        if (s.mult != 2) all_crit_mult2 = false;
      }
    }
    if (critical_slots == 0 || any_label || !all_crit_mult2) continue;
    if (static_cast<long>(p.A.size()) > critical_slots + 2) {
      block("critical-fiber-slot-bound");
      break;
    }
  }
  return adm;
}

Portrait compose_portraits(const Portrait& f, const Portrait& g) {
  require_valid(f);
  require_valid(g);
  std::set<std::string> fb(f.B.begin(), f.B.end());
  std::set<std::string> ga(g.A.begin(), g.A.end());
  if (fb != ga)
    fail(ErrorKind::MarkingMismatch,
         "middle markings differ (f.B vs g.A as symbol sets)");

  Portrait out;
  out.degree = f.degree * g.degree;
  out.A = f.A;
  out.B = g.B;
  for (const auto& b : g.B) {
    std::vector<FiberSlot> fiber;
    for (const auto& s : g.fibers.at(b)) {
      if (s.label) {
        // The middle point is marked; lift through its recorded fiber.
        auto it = f.fibers.find(*s.label);
        if (it == f.fibers.end())
          fail(ErrorKind::CompositionIncomplete,
               "no fiber data over middle point '" + *s.label + "'");
        for (const auto& r : it->second)
          fiber.push_back(FiberSlot{r.mult * s.mult, r.label});
      } else {
        // Unmarked middle point: f is unbranched there (all branching of a
        // valid portrait sits over its B), so the fiber is implicit.
        for (int i = 0; i < f.degree; ++i)
          fiber.push_back(FiberSlot{s.mult, std::nullopt});
      }
    }
    out.fibers[b] = std::move(fiber);
  }
  std::set<std::string> oa(out.A.begin(), out.A.end());
  std::set<std::string> ob(out.B.begin(), out.B.end());
  out.dynamical = f.dynamical && g.dynamical && oa == ob;
  canonicalize_slots(out);
  require_valid(out);
  return out;
}

std::map<std::string, std::string> marked_point_map(const Portrait& p) {
  std::map<std::string, std::string> out;
  for (const auto& [b, fiber] : p.fibers)
    for (const auto& s : fiber)
      if (s.label) out[*s.label] = b;
  return out;
}

std::vector<std::string> critical_values(const Portrait& p) {
  std::vector<std::string> out;
  for (const auto& b : p.B) {
    const auto& fiber = p.fibers.at(b);
    for (const auto& s : fiber)
      if (s.mult >= 2) {
        out.push_back(b);
        break;
      }
  }
  return out;
}

bool portraits_equal(const Portrait& a, const Portrait& b) {
  Portrait ca = a, cb = b;
  canonicalize_slots(ca);
  canonicalize_slots(cb);
  if (ca.degree != cb.degree || ca.dynamical != cb.dynamical) return false;
  if (std::set<std::string>(ca.A.begin(), ca.A.end()) !=
      std::set<std::string>(cb.A.begin(), cb.A.end()))
    return false;
  if (std::set<std::string>(ca.B.begin(), ca.B.end()) !=
      std::set<std::string>(cb.B.begin(), cb.B.end()))
    return false;
  if (ca.fibers.size() != cb.fibers.size()) return false;
  for (const auto& [key, fiber] : ca.fibers) {
    auto it = cb.fibers.find(key);
    if (it == cb.fibers.end()) return false;
    if (fiber.size() != it->second.size()) return false;
    for (size_t i = 0; i < fiber.size(); ++i) {
      if (fiber[i].mult != it->second[i].mult) return false;
      if (fiber[i].label != it->second[i].label) return false;
    }
  }
  return true;
}

// --- JSON -------------------------------------------------------------------

nlohmann::json portrait_to_json(const Portrait& p) {
  nlohmann::json j;
  j["degree"] = p.degree;
  j["A"] = p.A;
  j["B"] = p.B;
  j["dynamical"] = p.dynamical;
  nlohmann::json fibers = nlohmann::json::object();
  for (const auto& [b, fiber] : p.fibers) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : fiber) {
      nlohmann::json slot;
      slot["mult"] = s.mult;
      if (s.label)
        slot["label"] = *s.label;
      else
        slot["label"] = nullptr;
      arr.push_back(slot);
    }
    fibers[b] = arr;
  }
  j["fibers"] = fibers;
  return j;
}

Portrait portrait_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    fail(ErrorKind::InvalidPortrait, "portrait JSON must be an object");
  static const std::set<std::string> allowed = {"degree", "A", "B",
                                                "dynamical", "fibers"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(ErrorKind::InvalidPortrait,
           "unknown field '" + it.key() + "' in portrait JSON");
  for (const auto& key : allowed)
    if (!j.contains(key))
      fail(ErrorKind::InvalidPortrait,
           "missing field '" + key + "' in portrait JSON");

  Portrait p;
  try {
    p.degree = j.at("degree").get<int>();
    p.A = j.at("A").get<std::vector<std::string>>();
    p.B = j.at("B").get<std::vector<std::string>>();
    p.dynamical = j.at("dynamical").get<bool>();
    const auto& fibers = j.at("fibers");
    if (!fibers.is_object())
      fail(ErrorKind::InvalidPortrait, "'fibers' must be an object");
    for (auto it = fibers.begin(); it != fibers.end(); ++it) {
      std::vector<FiberSlot> fiber;
      if (!it.value().is_array())
        fail(ErrorKind::InvalidPortrait, "fiber must be an array of slots");
      for (const auto& slot : it.value()) {
        if (!slot.is_object())
          fail(ErrorKind::InvalidPortrait, "slot must be an object");
        for (auto sit = slot.begin(); sit != slot.end(); ++sit)
          if (sit.key() != "mult" && sit.key() != "label")
            fail(ErrorKind::InvalidPortrait,
                 "unknown field '" + sit.key() + "' in slot JSON");
        if (!slot.contains("mult"))
          fail(ErrorKind::InvalidPortrait, "slot missing 'mult'");
        FiberSlot s;
        s.mult = slot.at("mult").get<int>();
        if (slot.contains("label") && !slot.at("label").is_null())
          s.label = slot.at("label").get<std::string>();
        fiber.push_back(s);
      }
      p.fibers[it.key()] = std::move(fiber);
    }
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidPortrait,
         std::string("malformed portrait JSON: ") + e.what());
  }
  require_valid(p);
  return p;
}

}  // namespace pullback
