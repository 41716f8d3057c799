#pragma once

// Trace instrumentation helpers: enter/exit balance and the rollback
// invisibility contract at choose alternative boundaries.

#include <map>
#include <string>
#include <vector>

#include "chlang/engine.hpp"

namespace tracecheck {

using chlang::State;
using chlang::TraceEvent;
using chlang::Value;

// Watches a trace stream. A rule-9 enter whose parent is a choose node is
// an alternative attempt; the state at that point must equal the binding
// map snapshotted when the choose was entered.
struct InvisibilityChecker {
  struct Frame {
    int rule;
    int depth;
    bool is_choose_node;
    std::map<std::string, Value> snapshot;
  };

  std::vector<Frame> stack;
  int violations = 0;
  int balance_errors = 0;
  int bad_rules = 0;
  int attempts_checked = 0;

  void on_event(const TraceEvent& ev, const State& st) {
    if (ev.rule < 1 || ev.rule > 9) ++bad_rules;
    if (ev.kind == TraceEvent::Kind::Enter) {
      bool parent_is_node = !stack.empty() && stack.back().is_choose_node;
      bool is_attempt = ev.rule == 9 && parent_is_node;
      bool is_node = ev.rule == 9 && !is_attempt;
      if (is_attempt) {
        ++attempts_checked;
        if (st.bindings() != stack.back().snapshot) ++violations;
      }
      Frame f{ev.rule, ev.depth, is_node, {}};
      if (is_node) f.snapshot = st.bindings();
      stack.push_back(std::move(f));
    } else {
      if (stack.empty() || stack.back().depth != ev.depth ||
          stack.back().rule != ev.rule) {
        ++balance_errors;
      }
      if (!stack.empty()) stack.pop_back();
    }
  }

  bool clean() const {
    return violations == 0 && balance_errors == 0 && bad_rules == 0 &&
           stack.empty();
  }
};

}  // namespace tracecheck
