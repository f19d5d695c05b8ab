// Debates: role A plays for a cut formula, role B for its negation (or for
// negation-or-goal). Both are interleaved into one game on the arena formula,
// where B holds the disjunctions and A the conjunctions, under debate rules.

#pragma once

#include <optional>
#include <string>

#include "gamesem/arena.hpp"
#include "gamesem/examples.hpp"
#include "gamesem/pointer.hpp"
#include "gamesem/strategies.hpp"

namespace gamesem {

enum class Role { A, B };
std::string to_string(Role r);
inline Role role_of(Player p) { return p == Player::Eloise ? Role::B : Role::A; }

struct DebateArena {
  Formula cut = Formula::truth();  // canonical
  std::optional<Formula> goal;
  Formula arena = Formula::truth();
  Rules rules;
  Perspective a, b;
};

// An example name, or else a file holding a formula in the text format.
Formula resolve_formula(const std::string& name_or_path, const Oracle& oracle);

// Throws std::invalid_argument for goals with conjunctions.
DebateArena build_arena(const Formula& cut, const std::optional<Formula>& goal);

// Running: an interactive session that was left before the end.
enum class OutcomeKind { AWins, BWins, Lasso, BudgetExhausted, Running };

struct DebateOutcome {
  OutcomeKind kind = OutcomeKind::BudgetExhausted;
  std::optional<Lasso> lasso;
  Nat steps = 0;  // moves played after the start move
  std::string reason;
};

std::string to_string(const DebateOutcome& o);  // "B wins", "Lasso(3,4)", "BudgetExhausted(5)"

// GAMESEM_BUDGET if set, else 10000.
std::size_t default_budget();

struct DebateOptions {
  std::size_t budget = default_budget();
  bool detect_lasso = true;
  Nat min_periods = 3;  // full periods observed before a lasso is accepted
};

// Names that let a trace be rebuilt from a file.
struct Scenario {
  std::string cut;
  std::string goal;  // empty: none
  std::string f;     // oracle function spec, may be empty
  std::string p;     // oracle predicate spec, may be empty
  std::string a, b;  // strategy specs
  bool classical = false;  // a classical game on the cut (ABE = A, ELO = B)

  Oracle oracle() const;
};

struct DebateTrace {
  DebateArena setup;
  GameState state;
  DebateOutcome outcome;
  std::string a_name, b_name;
  std::optional<Scenario> scenario;

  Role role(Nat n) const { return role_of(state.move(n).player); }
  // The pointer structure, closed into a lasso when the outcome is one.
  InteractionSeq pointers() const;
};

DebateTrace run_debate(StrategyPtr a, StrategyPtr b, const Formula& cut,
                       const std::optional<Formula>& goal, const DebateOptions& options = {});

// Builds formulas and strategies from names and runs the debate.
DebateTrace run_scenario(const Scenario& s, const DebateOptions& options = {});

// The least (cycle_start, cycle_len), cycle_start first, such that positions
// from max(cycle_start,1) on repeat with period L for `min_periods` periods:
// same mover, pointer rule of a lasso, same family and depth, and payloads
// that repeat up to the round parameter (see detect_lasso in debate.cpp).
std::optional<Lasso> detect_lasso(const GameState& state, Nat min_periods = 3);

// Pointer rule only.
std::optional<Lasso> detect_lasso(const InteractionSeq& seq, Nat min_periods = 3);

struct DebateBlame {
  Blame blame;
  Role role;
};

// Requires a Lasso outcome.
DebateBlame blame_role(const DebateTrace& trace);

// Display of move n: "u=2", "ask n", "f=const:1 [0->0]".
std::string move_label(const DebateTrace& trace, Nat n);

enum class ExportFormat { Json, Dot, PhiLines };
ExportFormat parse_format(const std::string& name);
std::string export_trace(const DebateTrace& trace, ExportFormat format);

// Reads a JSON export. With a scenario the moves are replayed on the rebuilt
// arena; without one only the pointer structure is recovered.
struct ImportedTrace {
  InteractionSeq pointers;
  std::optional<DebateTrace> trace;
};
ImportedTrace import_trace(const std::string& text);

}  // namespace gamesem
