// Infinitary propositional formulas built from countable conjunctions and
// disjunctions. Truth is the empty conjunction and falsity the empty
// disjunction; arithmetic statements enter as oracle-resolved leaves that
// keep a display label for both polarities.
//
// Children are organised in segments. A segment is either a literal list or a
// generator family indexed by naturals or by functions. Flattening a nested
// node splices its segments into the parent, so a child is addressed by a
// Choice{segment, index} rather than by a flat position.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gamesem/function_handle.hpp"

namespace gamesem {

enum class Connective { And, Or };
enum class IndexKind { Natural, Function };

using Index = std::variant<Nat, FunctionHandle>;

struct Choice {
  std::size_t segment = 0;
  Index value = Nat{0};
};

bool operator==(const Choice& a, const Choice& b);
std::string to_string(const Index& index);

class Formula;

struct Segment {
  IndexKind kind = IndexKind::Natural;
  std::optional<Nat> count;  // nullopt: countably infinite
  std::optional<Nat> bound;  // how far exploration may enumerate an infinite family
  std::string binder;        // name of the bound index, for display
  std::string source;        // registry name of a serializable generator
  std::shared_ptr<const std::vector<Formula>> items;  // literal list
  std::function<Formula(const Index&)> generate;      // generator family

  bool is_list() const { return items != nullptr; }
  Formula child(const Index& index) const;

  static Segment list(std::vector<Formula> items);
  static Segment naturals(std::string binder, std::function<Formula(Nat)> gen,
                          std::optional<Nat> bound = std::nullopt);
  static Segment functions(std::string binder,
                           std::function<Formula(const FunctionHandle&)> gen);
};

class BudgetExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Formula {
public:
  static Formula leaf(bool value, std::string label = {}, std::string negated_label = {});
  static Formula truth() { return leaf(true); }
  static Formula falsity() { return leaf(false); }
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula node(Connective c, std::vector<Segment> segments);

  Connective connective() const;
  bool is_leaf() const;
  bool value() const;  // leaves only
  const std::vector<Segment>& segments() const;
  const std::string& label() const;
  const std::string& negated_label() const;

  Formula child(const Choice& choice) const;

  // Every family is a literal list, recursively.
  bool is_finite() const;

  const void* id() const { return node_.get(); }

  // Short one-line description: "1", "0", a leaf label, or "or[n]"-style heads.
  std::string head() const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Display of the child reached by `choice` below `parent`, e.g. "u=2" or "ask n".
std::string choice_label(const Formula& parent, const Choice& choice);

// The natural-indexed children of one segment up to `limit`. `complete` is set
// when the whole segment was listed.
std::vector<Formula> enumerate_segment(const Segment& s, std::size_t limit, bool& complete);

Formula negate(const Formula& a);

struct CanonicalizeOptions {
  std::size_t node_budget = 1'000'000;
  std::size_t probe = 8;  // generated children inspected when no bound is set
};

// Flattens nested same-connective nodes; leaves are atomic and never spliced.
Formula canonicalize(const Formula& a, const CanonicalizeOptions& options = {});

// Boolean evaluation. Bounded generators are read up to their bound; unbounded
// generators and function families are rejected with std::invalid_argument.
bool eval_finite(const Formula& a);

enum class Validity3 { Valid, Invalid, Unknown };
std::string to_string(Validity3 v);

Validity3 is_intuitionistically_valid(const Formula& a, std::size_t budget = 100'000);
Validity3 is_classically_valid(const Formula& a, std::size_t budget = 100'000);

// Compares connectives, leaf values and labels, and children in order
// (segment boundaries ignored). Generator families are compared on their first
// `probe` children.
bool structurally_equal(const Formula& a, const Formula& b, std::size_t probe = 8);

}  // namespace gamesem
