#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chlang/ast.hpp"

namespace chlang {

// What one run produced: the outcome, its error codes (empty on success),
// the final bindings sorted by name, and the rule-application count.
struct RunReport {
  bool success = true;
  std::vector<std::string> error_codes;
  std::vector<std::pair<std::string, std::string>> final_state;
  std::uint64_t steps = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport make_report(const Outcome& outcome, const State& state,
                      std::uint64_t steps);

// On success: one "name=value" line per binding. On failure: a
// "FAIL [c1, c2, ...]" line followed by the at-failure state.
std::string render_report(const RunReport& report);

}  // namespace chlang
