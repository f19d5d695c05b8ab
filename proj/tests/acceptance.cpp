// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failure N]...
//
// Exits 0 when every criterion passes except those listed as known failures.

#include <chrono>
#include <cstring>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gamesem/debate.hpp"
#include "oracles.hpp"

using namespace gamesem;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string join(const std::vector<Nat>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

DebateOptions budget(std::size_t n) {
  DebateOptions o;
  o.budget = n;
  return o;
}

std::vector<FunctionHandle> functions_of(const GameState& s) {
  std::vector<FunctionHandle> out;
  for (Nat n = 1; n < s.stage(); ++n)
    if (auto* f = std::get_if<FunctionHandle>(&s.move(n).choice.value)) out.push_back(*f);
  return out;
}

InteractionSeq star_lasso() { return InteractionSeq::lasso({0, 1, 0, 3, 4, 3}, Lasso{3, 4, 4}); }

Verdict minimum_debate() {
  Scenario s{"minimum", "", "10,8,3,27,default=27", "", "minimum", "epsilon"};
  const DebateTrace t = run_scenario(s, budget(100));
  const auto phi = t.state.pointers().pointers();
  const std::vector<Nat> head(phi.begin(), phi.begin() + std::min<std::size_t>(6, phi.size()));
  const std::string last = move_label(t, t.state.stage() - 1);
  const bool ok = head == std::vector<Nat>{0, 1, 2, 1, 4, 1} && t.outcome.kind == OutcomeKind::BWins &&
                  last == "u=2" && t.role(t.state.stage() - 1) == Role::B;
  return {ok, "phi(1..6)=" + join(head) + ", " + to_string(t.outcome) + " with " + last};
}

Verdict star_debate() {
  Scenario s{"star", "", "", "", "star", "star-refuter"};
  const DebateTrace t = run_scenario(s, budget(1000));
  const auto phi = t.state.pointers().pointers();
  const std::vector<Nat> head(phi.begin(), phi.begin() + std::min<std::size_t>(11, phi.size()));
  const auto fs = functions_of(t.state);
  const FunctionHandle f0 = FunctionHandle::constant(1);
  const bool funcs = fs.size() >= 3 && fs[0] == f0 && fs[1] == f0.updated(0, 0) &&
                     fs[2] == f0.updated(0, 0).updated(1, 0);
  const bool ok = head == std::vector<Nat>{0, 1, 0, 3, 4, 3, 0, 7, 8, 7, 0} &&
                  t.outcome.kind == OutcomeKind::Lasso && *t.outcome.lasso == Lasso{3, 4, 4} && funcs;
  std::string f3;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, fs.size()); ++i) f3 += (i ? "; " : "") + fs[i].describe();
  return {ok, "phi(1..11)=" + join(head) + ", " + to_string(t.outcome) + ", f0..f2 = " + f3};
}

// Shared corpus for the two pointer criteria.
const std::vector<std::vector<Nat>>& corpus() {
  static const std::vector<std::vector<Nat>> c = [] {
    std::mt19937_64 rng(20240601);
    std::vector<std::vector<Nat>> out;
    for (int i = 0; i < 10000; ++i) out.push_back(oracle::random_sequence(rng, 1 + rng() % 200));
    return out;
  }();
  return c;
}

Verdict nest_lemma() {
  std::size_t violations = 0, segments = 0;
  for (const auto& phi : corpus()) {
    const auto seq = InteractionSeq::finite({phi.begin() + 1, phi.end()});
    const auto def = definite_segments(seq, phi.size()).segments;
    segments += def.size();
    // independent pairwise check
    for (std::size_t i = 0; i < def.size(); ++i)
      for (std::size_t j = i + 1; j < def.size(); ++j) {
        const Span& a = def[i];
        const Span& b = def[j];
        const bool apart = a.right < b.left || b.right < a.left;
        const bool a_in_b = b.left <= a.left && a.right < b.right;
        const bool b_in_a = a.left <= b.left && b.right < a.right;
        if (!apart && !a_in_b && !b_in_a) ++violations;
      }
    if (!nest_check(def).ok) ++violations;
  }
  return {violations == 0, std::to_string(corpus().size()) + " sequences, " + std::to_string(segments) +
                               " definite segments, " + std::to_string(violations) + " violations"};
}

Verdict partition_views() {
  std::size_t violations = 0, checks = 0;
  for (const auto& phi : corpus()) {
    const auto seq = InteractionSeq::finite({phi.begin() + 1, phi.end()});
    for (Nat n = 1; n < phi.size(); ++n) {
      ++checks;
      const auto part = segments_partition(seq, n);
      std::vector<int> covered(n, 0);
      std::set<Nat> rights;
      for (const Span& s : part) {
        for (Nat k = s.left; k <= s.right && k < n; ++k) ++covered[k];
        rights.insert(s.right);
        if (s.right >= n) ++violations;
      }
      bool exact = std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; });
      if (!exact || rights != oracle::view(phi, n)) ++violations;
    }
  }
  return {violations == 0, std::to_string(checks) + " (sequence, n) pairs, " + std::to_string(violations) +
                               " violations"};
}

Verdict unique_chain() {
  const InteractionSeq l = star_lasso();
  const Chain c = omega_chain(l);
  const auto first = c.take(5);
  // Exhaustive search over unrollings. At horizon N a chain counts as full when
  // it starts in the first half and still reaches the last 8 positions; chains
  // that differ only past N-8 are the same chain seen through the cut.
  std::set<std::vector<Nat>> full;
  std::size_t horizons = 0;
  for (Nat N : {Nat{20}, Nat{40}, Nat{60}}) {
    std::set<std::vector<Nat>> here;
    for (const auto& f : brute_force_chains(l.unroll(N), N)) {
      if (f.elements.empty() || f.elements.front() >= N / 2 || f.elements.back() + 8 < N) continue;
      std::vector<Nat> cut;
      for (Nat e : f.elements)
        if (e < N - 8) cut.push_back(e);
      here.insert(cut);
    }
    horizons += here.size() == 1;
    if (N == 60) full = here;
  }
  bool parity = true;
  for (Nat e : c.take(20)) parity &= e % 2 == first[0] % 2;
  const Blame b = blame(l, "A", "B");
  const bool ok = first == std::vector<Nat>{0, 2, 6, 10, 14} && full.size() == 1 && horizons == 3 &&
                  *full.begin() == c.take(full.begin()->size()) && parity && b.blamed == "A";
  return {ok, "chain " + join(first) + ", full chains at horizon 60: " +
                  std::to_string(full.size()) + ", parity " + (parity ? "uniform" : "mixed") + ", blame " +
                  b.blamed};
}

Verdict transfinite() {
  const TransfiniteSeq t = extend_transfinite(star_lasso(), 2);
  const std::string v = t.view(Position::omega(1)).to_string();
  const bool valid = validate(t).ok;
  return {v == "{ω, 1, 0}" && valid,
          "V(ω+1) = " + v + " (expected {ω, 1, 0}), validate " + (valid ? "holds" : "fails")};
}

Verdict soundness() {
  std::mt19937_64 rng(777);
  int losses = 0;
  for (int i = 0; i < 100; ++i) {
    CopycatGame g = copycat(oracle::to_formula(oracle::random_tree(rng, 4)));
    if (play_classical(g.arena, g.strategy, random_opponent(rng()), 500).state.status() != Status::EloiseWins)
      ++losses;
  }
  const int copy_losses = losses;
  for (int i = 0; i < 20; ++i) {
    const Nat base = rng() % 20;
    std::map<Nat, Nat> pts;
    for (int k = rng() % 6; k > 0; --k) pts[rng() % 12] = rng() % 20;
    const NatFunction f{"support", [base, pts](Nat n) {
                          auto it = pts.find(n);
                          return it == pts.end() ? base : it->second;
                        }};
    const Formula m = build_example("minimum", {f});
    for (int j = 0; j < 100; ++j)
      if (play_classical(m, minimum_strategy(f), random_opponent(rng()), 400).state.status() != Status::EloiseWins)
        ++losses;
  }
  const int min_losses = losses - copy_losses;
  const Formula neg = negate(star_formula());
  int refuter_losses = 0;
  for (int i = 0; i < 100; ++i) {
    const Nat seed = rng();
    FunctionHandle g = i < 4 ? FunctionHandle::constant(i)
                             : FunctionHandle("hash:" + std::to_string(seed), [seed](Nat n) {
                                 std::mt19937_64 h(seed ^ (n * 0x9E3779B97F4A7C15ULL));
                                 return h() % 3 == 0 ? Nat{1} : Nat{0};
                               });
    RunResult r = play_classical(neg, star_refuter(), fixed_function_opponent(g), 50);
    Nat xs = 0;
    for (Nat n = 1; n < r.state.stage(); ++n) xs += r.state.move(n).player == Player::Eloise;
    if (r.state.status() != Status::EloiseWins || xs > 2) ++refuter_losses;
  }
  const int total = copy_losses + min_losses + refuter_losses;
  return {total == 0, "losses: copycat " + std::to_string(copy_losses) + "/100, minimum " +
                          std::to_string(min_losses) + "/2000, refuter " + std::to_string(refuter_losses) + "/100"};
}

Verdict continuity() {
  int misses = 0, runs = 0;
  const NatPredicate p = parse_predicate("eq:square-plus-3");
  for (Nat w = 1; w <= 8; ++w) {
    for (auto kind : {ContinuousKind::FirstNonzero, ContinuousKind::LastNonzero, ContinuousKind::SumMod,
                      ContinuousKind::FirstBad, ContinuousKind::LastBad}) {
      const bool star = is_star_kind(kind);
      const Formula f = star ? star_formula() : choice_formula(p);
      const StrategyPtr elo = star ? star_strategy() : countable_choice_strategy(p);
      const StrategyPtr abe = star ? continuous_opponent(kind, w) : continuous_opponent(kind, w, p);
      RunResult r = play_classical(f, elo, abe, 400);
      ++runs;
      if (r.state.status() != Status::EloiseWins || functions_of(r.state).size() > continuous_round_bound(w))
        ++misses;
      if (!continuity_audit(*abe, direct_perspective(f, Player::Abelard), r.state).consistent) ++misses;
    }
  }
  const Formula star = star_formula();
  RunResult d = play_classical(star, star_strategy(), discontinuous_opponent(), 6);
  const auto verdict = continuity_audit(*discontinuous_opponent(), direct_perspective(star, Player::Abelard), d.state);
  if (verdict.consistent) ++misses;
  std::string w = verdict.witness ? ", witness at move " + std::to_string(verdict.witness->function_move) +
                                        " point " + std::to_string(verdict.witness->point)
                                  : "";
  return {misses == 0, std::to_string(runs) + " continuous runs, discontinuous opponent " +
                           (verdict.consistent ? "not caught" : "caught") + w + ", misclassifications " +
                           std::to_string(misses)};
}

Verdict ackermann_bound() {
  Scenario s{"ackermann-bound", "", "ackermann-diag", "", "enumerator", "pr:square-plus-3"};
  const DebateTrace win = run_scenario(s, budget(1000));
  const Nat last = win.state.stage() - 1;
  const std::string x = move_label(win, last - 1), y = move_label(win, last);
  s.f = "identity";
  s.b = "pr:succ";
  const DebateTrace loop = run_scenario(s, budget(2000));
  const bool ok = win.outcome.kind == OutcomeKind::AWins && x == "x=2" && y == "y=7" &&
                  loop.outcome.kind == OutcomeKind::BudgetExhausted;
  return {ok, "ackermann: " + to_string(win.outcome) + " at " + x + ", " + y + "; identity: " + to_string(loop.outcome)};
}

Verdict validity() {
  std::mt19937_64 rng(31337);
  int disagreements = 0;
  for (int i = 0; i < 500; ++i) {
    const oracle::Tree t = oracle::random_tree(rng, 5);
    const bool truth = oracle::eval(t);
    const Formula f = oracle::to_formula(t);
    const Validity3 want = truth ? Validity3::Valid : Validity3::Invalid;
    if (eval_finite(f) != truth || is_intuitionistically_valid(f) != want || is_classically_valid(f) != want)
      ++disagreements;
  }
  return {disagreements == 0, "500 formulas, " + std::to_string(disagreements) + " disagreements"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
      known.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--known-failure N]...\n";
      return 1;
    }
  }
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"minimum/epsilon debate reproduction", minimum_debate},
      {"star debate reproduction", star_debate},
      {"nest lemma", nest_lemma},
      {"partition/view coherence", partition_views},
      {"unique omega chain and blame", unique_chain},
      {"transfinite extension", transfinite},
      {"strategy soundness", soundness},
      {"continuity", continuity},
      {"Ackermann bound vs primitive recursion", ackermann_bound},
      {"validity agreement", validity},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << k << " " << criteria[i].first << ": " << v.detail << " ["
              << ms << " ms]" << (!v.ok && known.count(k) ? " (known failure)" : "") << "\n";
    if (!v.ok && !known.count(k)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
