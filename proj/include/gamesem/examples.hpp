// The concrete formulas of the backtracking-game examples, built over
// oracle functions and predicates, plus the oracle notation used on the
// command line.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "gamesem/formula.hpp"

namespace gamesem {

struct NatFunction {
  std::string name;
  std::function<Nat(Nat)> fn;
  Nat operator()(Nat x) const { return fn(x); }
};

struct NatPredicate {
  std::string name;
  std::function<bool(Nat, Nat)> fn;
  bool operator()(Nat x, Nat y) const { return fn(x, y); }
};

// "10,8,3,27" (last value repeats), "10,8,3,27,default=5", "identity",
// "ackermann-diag", "zero", "square-plus-3", "succ".
NatFunction parse_function(const std::string& spec);

// "eq:<function spec>" is P(x, y) := (y == h(x)).
NatPredicate parse_predicate(const std::string& spec);

// A(m, n) by the textbook recursion, run on an explicit stack. nullopt when
// more than `step_budget` recursion steps would be needed.
std::optional<boost::multiprecision::cpp_int> ackermann(Nat m, Nat n,
                                                        std::size_t step_budget = 10'000'000);

// n -> A(n, n), saturating at the largest Nat. Throws BudgetExhausted when the
// recursion budget runs out.
NatFunction ackermann_diagonal(std::size_t step_budget = 10'000'000);

struct Oracle {
  std::optional<NatFunction> f;
  std::optional<NatPredicate> p;
};

// One of: minimum, ascent, epsilon-goal, choice, star, star-negation,
// ackermann-bound. Throws std::invalid_argument for other names or a missing
// oracle component.
Formula build_example(const std::string& name, const Oracle& oracle = {});

Formula minimum_formula(const NatFunction& f);       // or_n and_m f(n) <= f(m)
Formula ascent_formula(const NatFunction& f);        // or_u f(u) <= f(u+1)
Formula epsilon_goal_formula(const NatFunction& f);  // (and_n or_m f(n) > f(m)) or ascent
Formula choice_formula(const NatPredicate& p);       // or_f and_x P(x,f(x))  or  or_x and_y not P(x,y)
Formula star_formula();                              // or_f and_x or_y f(x)=0 & f(y)!=0
Formula ackermann_bound_formula(const NatFunction& f);  // or_x and_y y <= f(x)

}  // namespace gamesem
