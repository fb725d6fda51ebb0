// Minimal shared result type for identity-verification suites: the list of
// checks that passed. Operations throw CheckFailed (naming the violated
// identity) instead of returning a failed report.

#pragma once

#include <string>
#include <vector>

namespace pullback {

struct CheckReport {
  std::vector<std::string> passed;
};

}  // namespace pullback
