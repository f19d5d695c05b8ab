#include "doctest.h"

#include <random>

#include "gamesem/examples.hpp"
#include "gamesem/formula.hpp"
#include "gamesem/sexpr.hpp"
#include "oracles.hpp"

using namespace gamesem;

namespace {

Formula L(bool v) { return Formula::leaf(v); }

std::vector<Formula> children(const Formula& f) {
  std::vector<Formula> out;
  for (const Segment& s : f.segments()) {
    bool complete = false;
    for (auto& c : enumerate_segment(s, 16, complete)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("leaves and empty families") {
  CHECK(eval_finite(Formula::truth()));
  CHECK_FALSE(eval_finite(Formula::falsity()));
  CHECK_FALSE(eval_finite(Formula::disj({})));
  CHECK(eval_finite(Formula::conj({})));
  CHECK(eval_finite(Formula::conj({L(true), Formula::disj({L(false), L(true)})})));
  CHECK_FALSE(eval_finite(negate(Formula::truth())));
}

TEST_CASE("negate swaps connectives and leaf labels") {
  const Formula m = build_example("minimum", {parse_function("10,8,3,27")});
  const Formula n = negate(m);
  CHECK(n.connective() == Connective::And);
  const Formula inner = n.child(Choice{0, Nat{1}});
  CHECK(inner.connective() == Connective::Or);
  const Formula leaf = inner.child(Choice{0, Nat{2}});
  CHECK(leaf.is_leaf());
  CHECK(leaf.head() == "f(1) > f(2)");
  CHECK(leaf.value());  // 8 > 3
}

TEST_CASE("canonicalize flattens same-connective children") {
  const Formula a = canonicalize(Formula::disj({Formula::disj({L(true)})}));
  auto ka = children(a);
  REQUIRE(ka.size() == 1);
  CHECK(ka[0].is_leaf());
  CHECK(ka[0].value());

  const Formula b = canonicalize(Formula::disj({Formula::conj({L(false), L(true)}), Formula::disj({L(true), L(false)})}));
  auto kb = children(b);
  REQUIRE(kb.size() == 3);
  CHECK(kb[0].connective() == Connective::And);
  CHECK((kb[1].is_leaf() && kb[1].value()));
  CHECK((kb[2].is_leaf() && !kb[2].value()));
}

TEST_CASE("validity on small formulas") {
  CHECK(is_intuitionistically_valid(Formula::truth()) == Validity3::Valid);
  CHECK(is_intuitionistically_valid(Formula::conj({L(true), L(false)})) == Validity3::Invalid);
  CHECK(is_classically_valid(Formula::truth()) == Validity3::Valid);
  CHECK(is_classically_valid(Formula::disj({L(false)})) == Validity3::Invalid);
  const Formula a = Formula::conj({L(false), L(true)});
  CHECK(is_classically_valid(canonicalize(Formula::disj({a, negate(a)}))) == Validity3::Valid);
}

TEST_CASE("randomized agreement with the boolean oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const oracle::Tree t = oracle::random_tree(rng, 4);
    const bool truth = oracle::eval(t);
    const Formula f = oracle::to_formula(t);
    CHECK(eval_finite(f) == truth);
    CHECK(eval_finite(canonicalize(f)) == truth);
    CHECK(eval_finite(negate(f)) == !truth);
    CHECK(eval_finite(oracle::to_formula(oracle::negate(t))) == !truth);
    CHECK(structurally_equal(negate(negate(canonicalize(f))), canonicalize(f)));
    const Validity3 want = truth ? Validity3::Valid : Validity3::Invalid;
    CHECK(is_intuitionistically_valid(f) == want);
    CHECK(is_classically_valid(f) == want);
  }
}

TEST_CASE("build_example shapes") {
  const Oracle o{parse_function("10,8,3,27"), std::nullopt};
  const Formula m = build_example("minimum", o);
  CHECK(m.connective() == Connective::Or);
  CHECK(m.child(Choice{0, Nat{0}}).child(Choice{0, Nat{3}}).head() == "f(0) <= f(3)");

  const Formula e = canonicalize(build_example("epsilon-goal", o));
  CHECK(e.connective() == Connective::Or);

  const Formula s = build_example("star");
  CHECK(s.connective() == Connective::Or);
  CHECK(s.segments()[0].kind == IndexKind::Function);
  // f = const 1: f(x) = 0 fails for every x
  const Formula inner = s.child(Choice{0, FunctionHandle::constant(1)});
  CHECK(inner.connective() == Connective::And);

  const Formula k = build_example("ackermann-bound", {ackermann_diagonal(), std::nullopt});
  CHECK(k.child(Choice{0, Nat{2}}).child(Choice{0, Nat{7}}).value());
  CHECK_FALSE(k.child(Choice{0, Nat{2}}).child(Choice{0, Nat{8}}).value());

  CHECK_THROWS_AS(build_example("minimum"), std::invalid_argument);
  CHECK_THROWS_AS(build_example("no-such-example"), std::invalid_argument);
}

TEST_CASE("oracle functions") {
  const NatFunction f = parse_function("10,8,3,27");
  CHECK(f(0) == 10);
  CHECK(f(3) == 27);
  CHECK(f(100) == 27);
  CHECK(parse_function("10,8,3,27,default=5")(9) == 5);
  CHECK(parse_function("succ")(4) == 5);
  CHECK(parse_function("square-plus-3")(2) == 7);
  const NatFunction a = ackermann_diagonal();
  for (Nat n = 0; n <= 3; ++n) CHECK(a(n) == oracle::ackermann(n, n));
  CHECK(a(3) == 61);
  CHECK(*ackermann(2, 3) == oracle::ackermann(2, 3));
  CHECK_FALSE(ackermann(4, 2, 1000).has_value());
  CHECK(parse_predicate("eq:succ")(3, 4));
  CHECK_FALSE(parse_predicate("eq:succ")(3, 3));
}

TEST_CASE("text format round trip") {
  const char* text = "(or (and (leaf 0 \"a\") (leaf 1)) (gen 4 \"even\"))";
  const Formula f = read_formula(text);
  CHECK(structurally_equal(read_formula(write_formula(f)), f));
  CHECK_THROWS_AS(read_formula("(or (leaf 2))"), ParseError);
  CHECK_THROWS_AS(read_formula("(xor)"), ParseError);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Formula g = oracle::to_formula(oracle::random_tree(rng, 3));
    CHECK(structurally_equal(read_formula(write_formula(g)), g));
  }
}
