#include "doctest.h"

#include <random>

#include "gamesem/arena.hpp"
#include "gamesem/examples.hpp"
#include "gamesem/strategies.hpp"
#include "oracles.hpp"

using namespace gamesem;

namespace {

Formula L(bool v) { return Formula::leaf(v); }

Formula minimum10() { return canonicalize(build_example("minimum", {parse_function("10,8,3,27")})); }

bool has(const std::vector<Decision>& moves, Nat pointer, std::size_t segment, Nat index) {
  for (const auto& d : moves)
    if (d.pointer == pointer && d.choice.segment == segment && d.choice.value == Index{index}) return true;
  return false;
}

}  // namespace

TEST_CASE("classical moves on the minimum formula") {
  GameState s(minimum10());
  CHECK(s.first_mover() == Player::Eloise);
  s.play({0, {0, Nat{0}}});  // x = 0
  CHECK(s.to_move() == Player::Abelard);
  s.play({1, {0, Nat{1}}});  // y = 1: f(0) <= f(1) is false
  CHECK(s.status() == Status::Running);
  CHECK(s.to_move() == Player::Eloise);
  // Eloise may backtrack to the root; Abelard may only answer the last move
  auto legal = legal_moves(s);
  CHECK(has(legal, 0, 0, 1));
  s.play({0, {0, Nat{1}}});
  auto abe = legal_moves(s);
  for (const auto& d : abe) CHECK(d.pointer == 3);
  CHECK(s.check({1, {0, Nat{2}}}).has_value());
  s.play({3, {0, Nat{3}}});  // f(1) <= f(3)
  CHECK(s.status() == Status::EloiseWins);
  CHECK(legal_moves(s).empty());
  CHECK_THROWS_AS(s.play({0, {0, Nat{0}}}), IllegalMove);
}

TEST_CASE("legality checks") {
  GameState s(minimum10());
  CHECK(s.check({0, {0, Nat{0}}}) == std::nullopt);
  CHECK(s.check({1, {0, Nat{0}}}).has_value());  // not an earlier move
  CHECK(s.check({0, {1, Nat{0}}}).has_value());  // no such segment
  CHECK(s.check({0, {0, FunctionHandle::constant(0)}}).has_value());  // wrong payload kind
  s.play({0, {0, Nat{0}}});
  // Abelard may not choose at Eloise's disjunction
  const auto bad = s.check({0, {0, Nat{0}}});
  REQUIRE(bad.has_value());
}

TEST_CASE("Eloise reaching a leaf decides the classical game") {
  GameState win(Formula::disj({L(false), L(true)}));
  win.play({0, {0, Nat{1}}});
  CHECK(win.status() == Status::EloiseWins);
  GameState lose(Formula::disj({L(false), L(true)}));
  lose.play({0, {0, Nat{0}}});
  CHECK(lose.status() == Status::AbelardWins);
  // Abelard reaching a false leaf lets play go on
  GameState cont(canonicalize(Formula::conj({L(false), Formula::disj({L(true)})})));
  CHECK(cont.first_mover() == Player::Abelard);
  cont.play({0, {0, Nat{0}}});
  CHECK(cont.status() == Status::Running);
}

TEST_CASE("debate rules: only goal leaves reached by Eloise end the game") {
  const Formula arena = Formula::node(Connective::Or, {Segment::list({L(false)}), Segment::list({L(true)})});
  GameState a(arena, Rules{Mode::Debate, GoalStart{1, 0}});
  a.play({0, {0, Nat{0}}});
  CHECK(a.status() == Status::Running);
  GameState b(arena, Rules{Mode::Debate, GoalStart{1, 0}});
  b.play({0, {1, Nat{0}}});
  CHECK(b.status() == Status::EloiseWins);
}

TEST_CASE("pass rule") {
  GameState s(Formula::disj({L(false), L(true)}), Rules{Mode::Debate, std::nullopt});
  s.play({0, {0, Nat{0}}});  // Eloise lands on 0
  s.pass();                  // Abelard rests on a leaf that is true for him
  CHECK(s.status() == Status::AbelardWins);
  GameState t(Formula::disj({L(false), L(true)}), Rules{Mode::Debate, std::nullopt});
  t.play({0, {0, Nat{1}}});
  t.pass();
  CHECK(t.status() == Status::EloiseWins);
}

TEST_CASE("epsilon position offers both continuations") {
  const NatFunction f = parse_function("10,8,3,27");
  const Formula e = canonicalize(epsilon_goal_formula(f));
  GameState s(e);
  // find the conjunction segment (ask n) and the ascent segment (u)
  s.play({0, {0, Nat{0}}});
  REQUIRE(s.to_move() == Player::Abelard);
  s.play({1, {0, Nat{1}}});  // n = 1, f(1) = 8 > f(2) = 3
  auto legal = legal_moves(s);
  CHECK(has(legal, 2, 0, 2));  // m = a+1
  CHECK(has(legal, 0, 1, 1));  // u = a at the root
}

TEST_CASE("every finished game has a valid pointer structure and Abelard never backtracks") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Formula f = canonicalize(oracle::to_formula(oracle::random_tree(rng, 4)));
    RunResult r = play_classical(f, random_opponent(rng()), random_opponent(rng()), 200);
    CHECK(validate(r.state.pointers()).ok);
    for (Nat n = 1; n < r.state.stage(); ++n)
      if (r.state.move(n).player == Player::Abelard) CHECK(r.state.move(n).pointer == n - 1);
    // replays are exact
    GameState again = replay(r.state, r.state.stage());
    CHECK(again.pointers() == r.state.pointers());
    if (again.status() == Status::Running && r.state.status() != Status::Running) again.pass();  // ended by a pass
    CHECK(again.status() == r.state.status());
  }
}

TEST_CASE("copycat") {
  {
    CopycatGame g = copycat(L(true));
    CHECK(play_classical(g.arena, g.strategy, random_opponent(1)).state.status() == Status::EloiseWins);
  }
  {
    CopycatGame g = copycat(Formula::conj({L(false), L(true)}));
    CHECK(play_classical(g.arena, g.strategy, random_opponent(2)).state.status() == Status::EloiseWins);
  }
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const Formula a = oracle::to_formula(oracle::random_tree(rng, 4));
    CopycatGame g = copycat(a);
    const RunResult r = play_classical(g.arena, g.strategy, random_opponent(rng()), 500);
    CHECK(r.state.status() == Status::EloiseWins);
  }
}

TEST_CASE("continuity audit") {
  const Formula star = star_formula();
  const Perspective abe = direct_perspective(star, Player::Abelard);

  // the refuter reads g at finitely many points
  RunResult r = play_classical(star, star_strategy(), star_refuter(), 40);
  const auto ok = continuity_audit(*star_refuter(), abe, r.state);
  CHECK(ok.consistent);
  CHECK(ok.decisions_checked > 0);

  // searching for a zero without logging is caught
  RunResult d = play_classical(star, star_strategy(), discontinuous_opponent(), 6);
  const auto bad = continuity_audit(*discontinuous_opponent(), abe, d.state);
  CHECK_FALSE(bad.consistent);
  REQUIRE(bad.witness);
  CHECK(bad.witness->before != bad.witness->after);

  // an opponent that never reads f: nothing to perturb that matters
  RunResult z = play_classical(star, star_strategy(), random_opponent(4), 10);
  CHECK(continuity_audit(*random_opponent(4), abe, z.state).consistent);
}
