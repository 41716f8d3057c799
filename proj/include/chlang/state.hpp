#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chlang/value.hpp"

namespace chlang {

// Marks a transaction start point. Tokens follow a stack discipline:
// restore/commit must target the most recently opened token.
struct TxToken {
  std::size_t level;
};

// The variable-to-value binding store, with an undo log so that a failed
// choose alternative can be rolled back without copying the whole map.
class State {
 public:
  // Binding of x, or nullptr when unbound.
  const Value* get(const std::string& name) const;

  // Binds name to v, replacing any previous binding.
  void set(const std::string& name, Value v);

  // Opens a transaction; subsequent sets are undoable to this mark.
  TxToken tx_begin();

  // Restores the binding map observed at the matching tx_begin and closes
  // the token. Throws std::logic_error on a non-innermost token.
  void tx_restore(TxToken tok);

  // Closes the token keeping all writes; undo information is merged into
  // the enclosing transaction if one exists.
  void tx_commit(TxToken tok);

  const std::map<std::string, Value>& bindings() const { return bindings_; }
  std::size_t open_transactions() const { return marks_.size(); }

  // One line per binding, "name=value", names in lexicographic order.
  std::string serialize() const;

  friend bool operator==(const State& a, const State& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  struct UndoEntry {
    std::string name;
    std::optional<Value> prior;  // nullopt: binding did not exist
  };

  std::map<std::string, Value> bindings_;
  std::vector<UndoEntry> undo_;
  std::vector<std::size_t> marks_;  // undo_ size at each tx_begin
};

}  // namespace chlang
