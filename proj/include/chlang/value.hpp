#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace chlang {

// A runtime value: 64-bit signed integer, boolean, or string.
// Values are immutable; equality is structural.
struct Value {
  std::variant<std::int64_t, bool, std::string> data;

  Value() : data(std::int64_t{0}) {}
  explicit Value(std::int64_t i) : data(i) {}
  explicit Value(int i) : data(std::int64_t{i}) {}
  explicit Value(bool b) : data(b) {}
  explicit Value(std::string s) : data(std::move(s)) {}
  explicit Value(const char* s) : data(std::string(s)) {}

  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }

  std::int64_t as_int() const { return std::get<std::int64_t>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  const std::string& as_string() const { return std::get<std::string>(data); }

  friend bool operator==(const Value&, const Value&) = default;
};

// Quotes and escapes a string literal (\" \\ \n are the only escapes).
std::string quote_string(const std::string& s);

// Integers in decimal, strings quoted, booleans as true/false.
std::string render_value(const Value& v);

}  // namespace chlang
