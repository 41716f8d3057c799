#include "chlang/state.hpp"

#include <stdexcept>

namespace chlang {

const Value* State::get(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

void State::set(const std::string& name, Value v) {
  auto it = bindings_.find(name);
  if (!marks_.empty()) {
    if (it == bindings_.end()) {
      undo_.push_back({name, std::nullopt});
    } else {
      undo_.push_back({name, it->second});
    }
  }
  if (it == bindings_.end()) {
    bindings_.emplace(name, std::move(v));
  } else {
    it->second = std::move(v);
  }
}

TxToken State::tx_begin() {
  marks_.push_back(undo_.size());
  return TxToken{marks_.size()};
}

void State::tx_restore(TxToken tok) {
  if (tok.level != marks_.size() || marks_.empty()) {
    throw std::logic_error("tx_restore: token is not the innermost open transaction");
  }
  std::size_t mark = marks_.back();
  marks_.pop_back();
  while (undo_.size() > mark) {
    UndoEntry& e = undo_.back();
    if (e.prior.has_value()) {
      bindings_[e.name] = std::move(*e.prior);
    } else {
      bindings_.erase(e.name);
    }
    undo_.pop_back();
  }
}

void State::tx_commit(TxToken tok) {
  if (tok.level != marks_.size() || marks_.empty()) {
    throw std::logic_error("tx_commit: token is not the innermost open transaction");
  }
  marks_.pop_back();
  if (marks_.empty()) {
    undo_.clear();
  }
  // Otherwise the entries stay in the log, now owned by the enclosing mark.
}

std::string State::serialize() const {
  std::string out;
  for (const auto& [name, value] : bindings_) {
    out += name;
    out += '=';
    out += render_value(value);
    out += '\n';
  }
  return out;
}

}  // namespace chlang
