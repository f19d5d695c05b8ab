#include "doctest.h"

#include <map>
#include <random>

#include "gamesem/arena.hpp"
#include "gamesem/examples.hpp"
#include "gamesem/strategies.hpp"

using namespace gamesem;

namespace {

// Abelard that answers every question with answers[k] on its k-th turn.
class Scripted : public Strategy {
public:
  explicit Scripted(std::vector<Nat> answers) : answers_(std::move(answers)) {}
  std::string name() const override { return "scripted"; }
  std::optional<Decision> decide(const PlayerView& v) const override {
    const Nat turn = v.stage() / 2;  // Abelard moves at even stages here
    if (turn == 0 || turn > answers_.size()) return std::nullopt;
    return Decision{v.last(), {0, answers_[turn - 1]}};
  }

private:
  std::vector<Nat> answers_;
};

StrategyPtr scripted(std::vector<Nat> a) { return std::make_shared<Scripted>(std::move(a)); }

// A finite-support modification of a constant.
NatFunction random_support(std::mt19937_64& rng) {
  const Nat base = rng() % 20;
  std::map<Nat, Nat> points;
  const int k = rng() % 6;
  for (int i = 0; i < k; ++i) points[rng() % 12] = rng() % 20;
  return {"support", [base, points](Nat n) {
            auto it = points.find(n);
            return it == points.end() ? base : it->second;
          }};
}

Nat eloise_moves(const GameState& s) {
  Nat n = 0;
  for (Nat i = 1; i < s.stage(); ++i) n += s.move(i).player == Player::Eloise;
  return n;
}

const FunctionHandle* fn(const PlayedMove& m) { return std::get_if<FunctionHandle>(&m.choice.value); }

}  // namespace

TEST_CASE("minimum strategy on the debate function") {
  const NatFunction f = parse_function("10,8,3,27");
  const Formula m = build_example("minimum", {f});
  RunResult r = play_classical(m, minimum_strategy(f), scripted({1, 2, 3}));
  CHECK(r.state.status() == Status::EloiseWins);
  std::vector<Nat> xs;
  for (Nat n = 1; n < r.state.stage(); ++n)
    if (r.state.move(n).player == Player::Eloise) xs.push_back(std::get<Nat>(r.state.move(n).choice.value));
  CHECK(xs == std::vector<Nat>{0, 1, 2});
  CHECK(r.state.pointers().pointers() == std::vector<Nat>{0, 1, 0, 3, 0, 5});

  const NatFunction five = parse_function("5");
  for (Nat y : {0, 3, 9}) {
    RunResult c = play_classical(build_example("minimum", {five}), minimum_strategy(five), scripted({y}));
    CHECK(c.state.status() == Status::EloiseWins);
    CHECK(c.state.stage() == 3);
  }
}

TEST_CASE("minimum strategy against fuzzed opponents") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const NatFunction f = random_support(rng);
    const Formula m = build_example("minimum", {f});
    for (int j = 0; j < 100; ++j) {
      RunResult r = play_classical(m, minimum_strategy(f), random_opponent(rng()), 400);
      REQUIRE(r.state.status() == Status::EloiseWins);
      // x-choices <= 1 + strict descents along the play
      Nat descents = 0, prev = f(0);
      for (Nat n = 1; n < r.state.stage(); ++n) {
        const PlayedMove& mv = r.state.move(n);
        if (mv.player != Player::Eloise) continue;
        const Nat x = std::get<Nat>(mv.choice.value);
        if (n > 1 && f(x) < prev) ++descents;
        prev = f(x);
      }
      CHECK(eloise_moves(r.state) <= 1 + descents);
    }
  }
}

TEST_CASE("epsilon strategy") {
  const NatFunction f = parse_function("10,8,3,27");
  const Formula e = canonicalize(epsilon_goal_formula(f));
  // a = 2: f(2) = 3 <= f(3) = 27, so u = 2
  RunResult r = play_classical(e, epsilon_strategy(f), scripted({2}));
  CHECK(r.state.status() == Status::EloiseWins);
  const PlayedMove& last = r.state.move(r.state.stage() - 1);
  CHECK(last.choice.segment == 1);
  CHECK(std::get<Nat>(last.choice.value) == 2);
  // a = 0: f(0) > f(1), so m = 1
  RunResult q = play_classical(e, epsilon_strategy(f), scripted({0}));
  CHECK(q.state.move(3).pointer == 2);
  CHECK(std::get<Nat>(q.state.move(3).choice.value) == 1);
  CHECK(q.state.status() == Status::EloiseWins);

  std::mt19937_64 rng(8);
  for (int j = 0; j < 200; ++j) {
    RunResult z = play_classical(e, epsilon_strategy(f), random_opponent(rng()), 100);
    CHECK(z.state.status() == Status::EloiseWins);
    CHECK(eloise_moves(z.state) <= 2);
  }
}

TEST_CASE("star strategy: the increasing opponent never loses") {
  std::vector<Nat> xs;
  for (Nat k = 0; k < 20; ++k) xs.push_back(k);
  RunResult r = play_classical(star_formula(), star_strategy(), scripted(xs), 12);
  CHECK(r.state.status() == Status::Running);
  std::vector<FunctionHandle> played;
  for (Nat n = 1; n < r.state.stage(); ++n)
    if (auto* f = fn(r.state.move(n))) played.push_back(*f);
  REQUIRE(played.size() >= 3);
  const FunctionHandle f0 = FunctionHandle::constant(1);
  CHECK(played[0] == f0);
  CHECK(played[1] == f0.updated(0, 0));
  CHECK(played[2] == f0.updated(0, 0).updated(1, 0));
  CHECK(played[1].peek(0) == 0);
  CHECK(played[1].peek(1) == 1);
}

TEST_CASE("star strategy wins on x1 < 1") {
  RunResult r = play_classical(star_formula(), star_strategy(), scripted({0, 0}));
  CHECK(r.state.status() == Status::EloiseWins);
  const PlayedMove& last = r.state.move(r.state.stage() - 1);
  CHECK(std::get<Nat>(last.choice.value) == 1);
}

TEST_CASE("star refuter against fixed functions") {
  const Formula neg = negate(star_formula());
  std::vector<FunctionHandle> corpus;
  for (Nat c = 0; c < 4; ++c) corpus.push_back(FunctionHandle::constant(c));
  corpus.push_back(FunctionHandle::constant(0).updated(1, 1));
  corpus.push_back(FunctionHandle::constant(1).updated(0, 0));
  std::mt19937_64 rng(4);
  while (corpus.size() < 100) {
    const Nat seed = rng();
    corpus.push_back(FunctionHandle("hash:" + std::to_string(seed), [seed](Nat n) {
      std::mt19937_64 g(seed ^ (n * 0x9E3779B97F4A7C15ULL));
      return g() % 3 == 0 ? Nat{1} : Nat{0};
    }));
  }
  for (const FunctionHandle& g : corpus) {
    RunResult r = play_classical(neg, star_refuter(), fixed_function_opponent(g), 50);
    CHECK(r.state.status() == Status::EloiseWins);
    CHECK(eloise_moves(r.state) <= 2);
  }
  // g(0) = 0, g(1) = 1 with y0 = 1: one backtrack to x = 1
  RunResult r = play_classical(neg, star_refuter(), fixed_function_opponent(FunctionHandle::constant(0).updated(1, 1)));
  CHECK(r.state.status() == Status::EloiseWins);
  CHECK(eloise_moves(r.state) == 2);
}

TEST_CASE("continuous opponents lose within the round bound") {
  for (Nat w = 1; w <= 8; ++w) {
    for (auto kind : {ContinuousKind::FirstNonzero, ContinuousKind::LastNonzero, ContinuousKind::SumMod}) {
      RunResult r = play_classical(star_formula(), star_strategy(), continuous_opponent(kind, w), 400);
      CHECK(r.state.status() == Status::EloiseWins);
      Nat fmoves = 0;
      for (Nat n = 1; n < r.state.stage(); ++n) fmoves += fn(r.state.move(n)) != nullptr;
      CHECK(fmoves <= continuous_round_bound(w));
    }
    const NatPredicate p = parse_predicate("eq:square-plus-3");
    for (auto kind : {ContinuousKind::FirstBad, ContinuousKind::LastBad}) {
      RunResult r = play_classical(choice_formula(p), countable_choice_strategy(p),
                                   continuous_opponent(kind, w, p), 400);
      CHECK(r.state.status() == Status::EloiseWins);
      Nat fmoves = 0;
      for (Nat n = 1; n < r.state.stage(); ++n) fmoves += fn(r.state.move(n)) != nullptr;
      CHECK(fmoves <= continuous_round_bound(w));
    }
  }
}

TEST_CASE("countable choice keeps f0 plus the collected updates") {
  const NatPredicate p = parse_predicate("eq:succ");
  RunResult r = play_classical(choice_formula(p), countable_choice_strategy(p),
                               continuous_opponent(ContinuousKind::FirstBad, 4, p), 400);
  CHECK(r.state.status() == Status::EloiseWins);
  std::vector<FunctionHandle> fs;
  for (Nat n = 1; n < r.state.stage(); ++n)
    if (auto* f = fn(r.state.move(n))) fs.push_back(*f);
  REQUIRE(fs.size() == 5);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    CHECK(fs[k].base_name() == "const:0");
    CHECK(fs[k].updates().size() == k);
    for (const auto& [x, y] : fs[k].updates()) CHECK(y == x + 1);
  }
}

TEST_CASE("enumerator against primitive recursive opponents") {
  const Formula k = build_example("ackermann-bound", {ackermann_diagonal()});
  RunResult r = play_classical(k, soloviev_enumerator(), pr_opponent(parse_function("square-plus-3")));
  CHECK(r.state.status() == Status::EloiseWins);
  CHECK(std::get<Nat>(r.state.move(r.state.stage() - 2).choice.value) == 2);
  CHECK(std::get<Nat>(r.state.move(r.state.stage() - 1).choice.value) == 7);

  RunResult z = play_classical(k, soloviev_enumerator(), pr_opponent(parse_function("zero")));
  CHECK(z.state.status() == Status::EloiseWins);
  CHECK(z.state.stage() == 3);

  const Formula id = build_example("ackermann-bound", {parse_function("identity")});
  RunResult b = play_classical(id, soloviev_enumerator(), pr_opponent(parse_function("succ")), 200);
  CHECK(b.state.status() == Status::Running);
}

TEST_CASE("built-in strategies only make legal moves") {
  std::mt19937_64 rng(123);
  const NatFunction f = parse_function("10,8,3,27");
  const NatPredicate p = parse_predicate("eq:succ");
  struct Case {
    Formula formula;
    StrategyPtr strategy;
  };
  const std::vector<Case> cases = {
      {build_example("minimum", {f}), minimum_strategy(f)},
      {canonicalize(epsilon_goal_formula(f)), epsilon_strategy(f)},
      {star_formula(), star_strategy()},
      {negate(star_formula()), star_refuter()},
      {choice_formula(p), countable_choice_strategy(p)},
      {build_example("ackermann-bound", {parse_function("square-plus-3")}), soloviev_enumerator()},
  };
  for (const Case& c : cases)
    for (int i = 0; i < 1000; ++i)
      CHECK_NOTHROW(play_classical(c.formula, c.strategy, random_opponent(rng(), 6), 40));
}

TEST_CASE("strategy specs") {
  const Oracle o{parse_function("10,8,3,27"), parse_predicate("eq:succ")};
  for (const char* spec : {"minimum", "epsilon", "choice", "star", "star-refuter", "enumerator", "discontinuous",
                           "pr:succ", "fixed:zero", "random:3", "continuous:sum-mod:4"})
    CHECK(make_strategy(spec, o) != nullptr);
  CHECK_THROWS_AS(make_strategy("nonsense", o), std::invalid_argument);
  CHECK_THROWS_AS(make_strategy("minimum", {}), std::invalid_argument);
  CHECK(implied_goal("epsilon") == std::optional<std::string>("ascent"));
  CHECK_FALSE(implied_goal("minimum"));
}
