// The backtracking game over one formula. Eloise owns the disjunctions,
// Abelard the conjunctions; move 0 is the start move at the root and the owner
// of the root moves first. Every later move points at an earlier move in its
// view and picks a child of the node that move reached.
//
// Classical rules: only Eloise backtracks; Abelard always answers the move just
// made. Eloise reaching a leaf ends the game with its value, Abelard reaching a
// true leaf loses, a false leaf lets Eloise go on.
//
// Debate rules: both players may point anywhere in their view and leaves do
// not end the game, except leaves of the goal region reached by Eloise.
//
// A player who passes (or has nothing to play) wins iff the opponent's last
// move reached a leaf that is true for the passer.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamesem/formula.hpp"
#include "gamesem/pointer.hpp"

namespace gamesem {

enum class Player { Eloise, Abelard };
enum class Mode { Classical, Debate };
enum class Status { Running, EloiseWins, AbelardWins };

Player opponent(Player p);
Player owner(const Formula& node);  // Or: Eloise, And: Abelard; leaves: Eloise
std::string to_string(Player p);
std::string to_string(Status s);

struct GoalStart {
  std::size_t segment = 0;
  Nat index = 0;
};

struct Rules {
  Mode mode = Mode::Classical;
  // Root choices at or after this point belong to the goal (debate rules).
  std::optional<GoalStart> goal;
};

struct PlayedMove {
  Player player = Player::Eloise;
  bool start = false;
  Nat pointer = 0;
  Choice choice;
  Formula node = Formula::truth();  // node reached
  std::vector<Choice> path;         // from the root to `node`
};

struct Decision {
  Nat pointer = 0;
  Choice choice;
};

class IllegalMove : public std::runtime_error {
public:
  IllegalMove(const std::string& what, Player by) : std::runtime_error(what), by_(by) {}
  Player by() const { return by_; }

private:
  Player by_;
};

class GameState {
public:
  GameState(Formula root, Rules rules = {});

  const Formula& root() const { return root_; }
  const Rules& rules() const { return rules_; }
  const std::vector<PlayedMove>& moves() const { return moves_; }
  const PlayedMove& move(Nat n) const { return moves_.at(n); }

  Nat stage() const { return moves_.size(); }  // index of the next move
  Player first_mover() const { return first_; }
  Player to_move() const;
  Status status() const { return status_; }
  const std::string& reason() const { return reason_; }

  // V(n) of the pointer structure; view() is the mover's current view.
  std::vector<Nat> view(Nat n) const;
  std::vector<Nat> view() const { return view(stage()); }
  InteractionSeq pointers() const;

  // nullopt when legal, otherwise the reason.
  std::optional<std::string> check(const Decision& d) const;
  void play(const Decision& d);  // throws IllegalMove
  void pass();

  bool in_goal(const Choice& root_choice) const;

private:
  Formula root_;
  Rules rules_;
  Player first_;
  std::vector<PlayedMove> moves_;
  std::vector<Nat> phi_{0};
  Status status_ = Status::Running;
  std::string reason_;

  void finish(Status s, std::string why);
};

// Legal decisions for the player to move. Natural families are listed up to
// their bound or `limit` children; function families offer the constants 0 and 1.
std::vector<Decision> legal_moves(const GameState& state, std::size_t limit = 16);

// How a strategy sees the arena. Every strategy plays Eloise on its own
// formula: `own_root` is that formula, found in the arena either below the
// path `prefix`, or (when `root_segments` is set) as the arena root cut down
// to its first k segments. A player on the conjunction side sees the arena
// through negation; indices are unchanged.
struct Perspective {
  Player player = Player::Eloise;
  Formula own_root = Formula::truth();
  std::vector<Choice> prefix;
  std::optional<std::size_t> root_segments;
};

// Eloise on the arena formula itself, or Abelard seeing it through negation.
Perspective direct_perspective(const Formula& arena, Player player);

class PlayerView {
public:
  PlayerView(const GameState& state, const Perspective& perspective);

  const GameState& state() const { return state_; }
  const Perspective& perspective() const { return perspective_; }
  Nat stage() const { return state_.stage(); }
  Nat last() const { return state_.stage() - 1; }
  const std::vector<Nat>& view() const { return view_; }
  bool visible(Nat m) const;
  const PlayedMove& move(Nat m) const { return state_.move(m); }

  // Path of move m inside the own formula; nullopt outside it.
  std::optional<std::vector<Choice>> own_path(Nat m) const;
  std::optional<Formula> own_node(Nat m) const;

  // The latest visible move whose own path is `path`.
  std::optional<Nat> find(const std::vector<Choice>& path) const;

  std::vector<Decision> legal(std::size_t limit = 16) const { return legal_moves(state_, limit); }

private:
  const GameState& state_;
  const Perspective& perspective_;
  std::vector<Nat> view_;
};

class Strategy {
public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  // nullopt passes. Must be deterministic in the visible history.
  virtual std::optional<Decision> decide(const PlayerView& view) const = 0;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

struct Seat {
  StrategyPtr strategy;
  Perspective perspective;
};

enum class RunEnd { Finished, BudgetExhausted, Stopped };

struct RunResult {
  GameState state;
  RunEnd end = RunEnd::Finished;
};

// Alternates the two seats until the game ends, `budget` moves have been
// played, or `stop` returns true after a move. Illegal decisions throw
// IllegalMove naming the offending player.
RunResult run_game(GameState state, const Seat& eloise, const Seat& abelard, std::size_t budget,
                   const std::function<bool(const GameState&)>& stop = {});

// Classical game of `eloise` on `formula` against `abelard`, both seen directly.
RunResult play_classical(const Formula& formula, StrategyPtr eloise, StrategyPtr abelard,
                         std::size_t budget = 1000);

// Rebuilds the state after moves 1..upto-1 of `trace`. Function payloads get
// fresh query logs; `substitute` may swap a function payload for another.
GameState replay(const GameState& trace, Nat upto,
                 const std::function<std::optional<FunctionHandle>(Nat, const FunctionHandle&)>& substitute = {});

struct ContinuityWitness {
  Nat stage = 0;        // audited decision
  Nat function_move = 0;  // move whose function payload was perturbed
  Nat point = 0;
  Nat original_value = 0;
  Nat perturbed_value = 0;
  std::string before, after;
};

struct ContinuityVerdict {
  bool consistent = true;
  std::optional<ContinuityWitness> witness;
  std::size_t decisions_checked = 0;
  std::size_t perturbations = 0;
};

// For every move of the audited player in `trace`, replays the prefix, lets
// the strategy decide, then perturbs earlier function payloads at points it did
// not query and checks that the decision stays the same. At most `trials`
// perturbations per decision.
ContinuityVerdict continuity_audit(const Strategy& strategy, const Perspective& perspective,
                                   const GameState& trace, std::size_t trials = 32);

std::string describe(const Decision& d);

}  // namespace gamesem
