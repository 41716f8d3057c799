#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "chlang/state.hpp"

using namespace chlang;

TEST_CASE("get and set") {
  State st;
  CHECK(st.get("x") == nullptr);
  st.set("x", Value(7));
  REQUIRE(st.get("x") != nullptr);
  CHECK(*st.get("x") == Value(7));
  CHECK(st.get("y") == nullptr);

  st.set("x", Value(2));  // replacement, not a second binding
  CHECK(*st.get("x") == Value(2));
  CHECK(st.bindings().size() == 1);

  st.set("y", Value(3));
  CHECK(st.bindings().size() == 2);
}

TEST_CASE("restore undoes writes") {
  State st;
  st.set("x", Value(1));
  TxToken t = st.tx_begin();
  st.set("x", Value(2));
  st.set("y", Value(3));
  st.tx_restore(t);
  CHECK(*st.get("x") == Value(1));
  CHECK(st.get("y") == nullptr);
}

TEST_CASE("restore removes bindings created inside the transaction") {
  State st;
  TxToken t = st.tx_begin();
  st.set("x", Value(1));
  st.tx_restore(t);
  CHECK(st.bindings().empty());
}

TEST_CASE("empty transaction") {
  State st;
  st.set("a", Value(5));
  auto before = st.bindings();
  TxToken t = st.tx_begin();
  st.tx_commit(t);
  CHECK(st.bindings() == before);

  TxToken t2 = st.tx_begin();
  st.tx_restore(t2);
  CHECK(st.bindings() == before);
}

TEST_CASE("nested restore targets the right marks") {
  State st;
  TxToken t1 = st.tx_begin();
  st.set("x", Value(1));
  TxToken t2 = st.tx_begin();
  st.set("x", Value(2));
  st.tx_restore(t2);
  CHECK(*st.get("x") == Value(1));
  st.tx_restore(t1);
  CHECK(st.get("x") == nullptr);
}

TEST_CASE("commit merges undo info into the enclosing transaction") {
  State st;
  TxToken t1 = st.tx_begin();
  TxToken t2 = st.tx_begin();
  st.set("x", Value(1));
  st.tx_commit(t2);
  CHECK(*st.get("x") == Value(1));
  st.tx_restore(t1);
  CHECK(st.get("x") == nullptr);
}

TEST_CASE("commit keeps writes") {
  State st;
  TxToken t = st.tx_begin();
  st.set("x", Value(1));
  st.tx_commit(t);
  CHECK(*st.get("x") == Value(1));
}

TEST_CASE("non-innermost token is a contract violation") {
  State st;
  TxToken t1 = st.tx_begin();
  TxToken t2 = st.tx_begin();
  CHECK_THROWS_AS(st.tx_restore(t1), std::logic_error);
  CHECK_THROWS_AS(st.tx_commit(t1), std::logic_error);
  st.tx_commit(t2);
  st.tx_commit(t1);
  CHECK_THROWS_AS(st.tx_commit(t1), std::logic_error);
}

TEST_CASE("serialization is lexicographic with typed rendering") {
  State st;
  st.set("b", Value(true));
  st.set("a", Value(-3));
  st.set("c", Value("hi\n"));
  CHECK(st.serialize() == "a=-3\nb=true\nc=\"hi\\n\"\n");
}

namespace {

// Snapshot-based oracle: deep-copies the whole map at each begin.
struct SnapshotOracle {
  std::map<std::string, Value> bindings;
  std::vector<std::map<std::string, Value>> stack;

  void set(const std::string& n, Value v) { bindings[n] = std::move(v); }
  void begin() { stack.push_back(bindings); }
  void restore() {
    bindings = stack.back();
    stack.pop_back();
  }
  void commit() { stack.pop_back(); }
};

}  // namespace

TEST_CASE("fuzz: undo log agrees with whole-map snapshots") {
  std::mt19937_64 rng(20260823);
  const char* names[] = {"a", "b", "c", "d"};
  for (int round = 0; round < 500; ++round) {
    State st;
    SnapshotOracle oracle;
    std::vector<TxToken> open;
    for (int step = 0; step < 60; ++step) {
      int op = static_cast<int>(rng() % 4);
      if (op == 0) {
        open.push_back(st.tx_begin());
        oracle.begin();
      } else if (op == 1 && !open.empty()) {
        st.tx_restore(open.back());
        open.pop_back();
        oracle.restore();
      } else if (op == 2 && !open.empty()) {
        st.tx_commit(open.back());
        open.pop_back();
        oracle.commit();
      } else {
        std::string n = names[rng() % 4];
        Value v(static_cast<int>(rng() % 100));
        st.set(n, v);
        oracle.set(n, v);
      }
      REQUIRE(st.bindings() == oracle.bindings);
    }
    while (!open.empty()) {
      if (rng() % 2) {
        st.tx_restore(open.back());
        oracle.restore();
      } else {
        st.tx_commit(open.back());
        oracle.commit();
      }
      open.pop_back();
      REQUIRE(st.bindings() == oracle.bindings);
    }
  }
}
