// Built-in strategies. Each one plays Eloise on its own formula and reacts to
// the move just made, read through the player's perspective.

#pragma once

#include <optional>
#include <string>

#include "gamesem/arena.hpp"
#include "gamesem/examples.hpp"

namespace gamesem {

// Own formula: or_n and_m f(n) <= f(m). Plays n = 0 and moves to any m with a
// smaller value that the opponent shows.
StrategyPtr minimum_strategy(NatFunction f);

// Own formula: epsilon_goal_formula(f). Asks for n; on n = a plays u = a when
// f(a) <= f(a+1), otherwise m = a+1.
StrategyPtr epsilon_strategy(NatFunction f);

// Own formula: choice_formula(p). Plays f_0 = const 0, asks the opponent for
// y at every x it names, and replays f_0 updated with all answers so far.
StrategyPtr countable_choice_strategy(NatPredicate p);

// A1 on star_formula(): f_0 = const 1; on x_k >= k plays f_{k+1} = f_k, k -> 0,
// on x_k < k wins with y = k.
StrategyPtr star_strategy();

// B1 on negate(star_formula()): x = 0, then x = y_0 if g(0) = 0 and g(y_0) != 0.
StrategyPtr star_refuter();

// Own formula: ackermann_bound_formula(f). Plays x = 0, 1, 2, ...
StrategyPtr soloviev_enumerator();

// Opponent on ackermann_bound_formula: answers x with y = family(x).
StrategyPtr pr_opponent(NatFunction family);

// Picks uniformly among legal_moves(state, limit), seeded by (seed, stage).
StrategyPtr random_opponent(std::uint64_t seed, std::size_t limit = 12);

// Opponent on star_formula that plays g, then the least y < 64 with g(y) != 0
// (or 0).
StrategyPtr fixed_function_opponent(FunctionHandle g);

// Opponents that read a function move only on the window [0, W).
//   star: first-nonzero, last-nonzero, sum-mod (x from f on the window);
//   choice: first-bad, last-bad (x = a window point where not P(x, f(x)),
//   y = least y with P(x, y)).
enum class ContinuousKind { FirstNonzero, LastNonzero, SumMod, FirstBad, LastBad };
std::string to_string(ContinuousKind k);
ContinuousKind parse_continuous_kind(const std::string& name);
bool is_star_kind(ContinuousKind k);
StrategyPtr continuous_opponent(ContinuousKind kind, Nat window,
                                 std::optional<NatPredicate> p = std::nullopt);

// Opponent on star_formula: x = least n with f(n) = 0 (searched up to 2^16),
// read without logging.
StrategyPtr discontinuous_opponent();

// Rounds within which star_strategy / countable_choice_strategy beat a
// continuous opponent with window W: function moves <= W + 1.
inline Nat continuous_round_bound(Nat window) { return window + 1; }

struct CopycatGame {
  Formula arena;  // canonicalize(a or not a)
  StrategyPtr strategy;
};

// Mirrors Abelard's choices in one copy of a into the dual copy. Requires a
// finite formula.
CopycatGame copycat(const Formula& a);

// "minimum", "epsilon", "choice", "star", "star-refuter", "enumerator",
// "pr:<function>", "random:<seed>", "continuous:<kind>:<W>", "discontinuous",
// "fixed:<function>". Throws std::invalid_argument for unknown specs or
// missing oracle parts.
StrategyPtr make_strategy(const std::string& spec, const Oracle& oracle);

// The goal example a strategy for role B expects, if any ("epsilon" -> "ascent").
std::optional<std::string> implied_goal(const std::string& spec);

}  // namespace gamesem
