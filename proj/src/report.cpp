#include "chlang/report.hpp"

namespace chlang {

RunReport make_report(const Outcome& outcome, const State& state,
                      std::uint64_t steps) {
  RunReport r;
  r.success = outcome.success;
  for (const ErrorCode& c : outcome.codes) r.error_codes.push_back(c.code);
  for (const auto& [name, value] : state.bindings()) {
    r.final_state.emplace_back(name, render_value(value));
  }
  r.steps = steps;
  return r;
}

std::string render_report(const RunReport& report) {
  std::string out;
  if (!report.success) {
    out += "FAIL [";
    for (std::size_t i = 0; i < report.error_codes.size(); ++i) {
      if (i) out += ", ";
      out += report.error_codes[i];
    }
    out += "]\n";
  }
  for (const auto& [name, value] : report.final_state) {
    out += name;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace chlang
