// A total function on the naturals that can be played as a move: a base
// function plus a finite list of point updates (f, x0 -> y0, x1 -> y1, ...).
//
// Opponents read the function through query(), which records the point in a
// log shared by all copies of the handle. The formula layer resolves leaves
// through peek(), which leaves the log untouched, so the log only ever shows
// what a strategy looked at.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gamesem {

using Nat = std::uint64_t;

class FunctionHandle {
public:
  using Base = std::function<Nat(Nat)>;

  FunctionHandle(std::string base_name, Base base);

  // λn.c
  static FunctionHandle constant(Nat c);

  // Parses "const:<c>"; throws std::invalid_argument for other names.
  static FunctionHandle from_base_name(const std::string& name);

  // Copy with x -> y appended and a fresh, empty query log.
  FunctionHandle updated(Nat x, Nat y) const;

  // Copy with the same values and a fresh, empty query log.
  FunctionHandle fresh() const;

  Nat query(Nat x) const;
  Nat peek(Nat x) const;

  const std::set<Nat>& queried() const { return *log_; }
  const std::vector<std::pair<Nat, Nat>>& updates() const { return updates_; }
  const std::string& base_name() const { return base_name_; }

  // "const:1 [0->0, 1->0]"
  std::string describe() const;

  // Intensional equality: same base name and same update list.
  friend bool operator==(const FunctionHandle& a, const FunctionHandle& b) {
    return a.base_name_ == b.base_name_ && a.updates_ == b.updates_;
  }

private:
  std::string base_name_;
  std::shared_ptr<const Base> base_;
  std::vector<std::pair<Nat, Nat>> updates_;
  std::shared_ptr<std::set<Nat>> log_;
};

}  // namespace gamesem
