#include "gamesem/strategies.hpp"

#include <algorithm>
#include <random>

namespace gamesem {

namespace {

using Rule = std::function<std::optional<Decision>(const PlayerView&)>;

class RuleStrategy : public Strategy {
public:
  RuleStrategy(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}
  std::string name() const override { return name_; }
  std::optional<Decision> decide(const PlayerView& v) const override { return rule_(v); }

private:
  std::string name_;
  Rule rule_;
};

StrategyPtr make(std::string name, Rule rule) {
  return std::make_shared<RuleStrategy>(std::move(name), std::move(rule));
}

const Nat* nat(const Choice& c) { return std::get_if<Nat>(&c.value); }
const FunctionHandle* fun(const Choice& c) { return std::get_if<FunctionHandle>(&c.value); }

// Own path of the move just made, or nullopt when it lies outside the own formula.
std::optional<std::vector<Choice>> last_path(const PlayerView& v) { return v.own_path(v.last()); }

std::optional<Decision> at_root(const PlayerView& v, Choice c) {
  auto root = v.find({});
  if (!root) return std::nullopt;
  return Decision{*root, std::move(c)};
}

constexpr Nat kSearchLimit = Nat{1} << 16;

}  // namespace

StrategyPtr minimum_strategy(NatFunction f) {
  return make("minimum", [f](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, Nat{0}}};
    if (p->size() == 2 && nat((*p)[0]) && nat((*p)[1])) {
      const Nat x = *nat((*p)[0]), y = *nat((*p)[1]);
      if (f(y) < f(x)) return at_root(v, {0, y});
    }
    return std::nullopt;
  });
}

StrategyPtr epsilon_strategy(NatFunction f) {
  return make("epsilon", [f](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, Nat{0}}};
    if (p->size() == 2 && (*p)[0] == Choice{0, Nat{0}} && nat((*p)[1])) {
      const Nat a = *nat((*p)[1]);
      if (f(a) <= f(a + 1)) return at_root(v, {1, a});
      return Decision{v.last(), {0, a + 1}};
    }
    return std::nullopt;
  });
}

StrategyPtr countable_choice_strategy(NatPredicate) {
  return make("choice", [](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, FunctionHandle::constant(0)}};
    if (p->size() != 2) return std::nullopt;
    const Choice& first = (*p)[0];
    if (first.segment == 0 && nat((*p)[1])) return at_root(v, {1, *nat((*p)[1])});
    if (first.segment == 1) {
      // f_0 updated with every answered pair, oldest first.
      FunctionHandle f = FunctionHandle::constant(0);
      const auto& seen = v.view();
      for (auto it = seen.rbegin(); it != seen.rend(); ++it) {
        auto q = v.own_path(*it);
        if (q && q->size() == 2 && (*q)[0].segment == 1 && nat((*q)[0]) && nat((*q)[1]))
          f = f.updated(*nat((*q)[0]), *nat((*q)[1]));
      }
      return at_root(v, {0, f});
    }
    return std::nullopt;
  });
}

StrategyPtr star_strategy() {
  return make("star", [](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, FunctionHandle::constant(1)}};
    if (p->size() == 2 && fun((*p)[0]) && nat((*p)[1])) {
      const FunctionHandle& f = *fun((*p)[0]);
      const Nat k = f.updates().size();
      if (*nat((*p)[1]) < k) return Decision{v.last(), {0, k}};
      return at_root(v, {0, f.updated(k, 0)});
    }
    return std::nullopt;
  });
}

StrategyPtr star_refuter() {
  return make("star-refuter", [](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->size() == 1 && fun((*p)[0])) return Decision{v.last(), {0, Nat{0}}};
    if (p->size() == 3 && fun((*p)[0]) && nat((*p)[1]) && nat((*p)[2])) {
      const FunctionHandle& g = *fun((*p)[0]);
      const Nat x = *nat((*p)[1]), y = *nat((*p)[2]);
      if (g.query(x) != 0 || g.query(y) == 0) return std::nullopt;
      const Nat g_move = v.move(v.move(v.last()).pointer).pointer;
      if (!v.visible(g_move)) return std::nullopt;
      return Decision{g_move, {0, y}};
    }
    return std::nullopt;
  });
}

StrategyPtr soloviev_enumerator() {
  return make("enumerator", [](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, Nat{0}}};
    if (p->size() == 2 && nat((*p)[0])) {
      auto leaf = v.own_node(v.last());
      if (leaf && leaf->is_leaf() && leaf->value()) return std::nullopt;
      return at_root(v, {0, *nat((*p)[0]) + 1});
    }
    return std::nullopt;
  });
}

StrategyPtr pr_opponent(NatFunction family) {
  return make("pr:" + family.name, [family](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p || p->size() != 1 || !nat((*p)[0])) return std::nullopt;
    return Decision{v.last(), {0, family(*nat((*p)[0]))}};
  });
}

StrategyPtr random_opponent(std::uint64_t seed, std::size_t limit) {
  return make("random:" + std::to_string(seed), [seed, limit](const PlayerView& v) -> std::optional<Decision> {
    auto moves = v.legal(limit);
    if (moves.empty()) return std::nullopt;
    std::seed_seq seq{seed, static_cast<std::uint64_t>(v.stage())};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    return moves[pick(rng)];
  });
}

StrategyPtr fixed_function_opponent(FunctionHandle g) {
  return make("fixed:" + g.describe(), [g](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p) return std::nullopt;
    if (p->empty()) return Decision{v.last(), {0, g}};
    if (p->size() == 2 && fun((*p)[0])) {
      Nat y = 0;
      for (Nat n = 0; n < 64; ++n)
        if (g.peek(n) != 0) {
          y = n;
          break;
        }
      return Decision{v.last(), {0, y}};
    }
    return std::nullopt;
  });
}

std::string to_string(ContinuousKind k) {
  switch (k) {
    case ContinuousKind::FirstNonzero: return "first-nonzero";
    case ContinuousKind::LastNonzero: return "last-nonzero";
    case ContinuousKind::SumMod: return "sum-mod";
    case ContinuousKind::FirstBad: return "first-bad";
    case ContinuousKind::LastBad: return "last-bad";
  }
  return "?";
}

ContinuousKind parse_continuous_kind(const std::string& name) {
  for (auto k : {ContinuousKind::FirstNonzero, ContinuousKind::LastNonzero, ContinuousKind::SumMod,
                 ContinuousKind::FirstBad, ContinuousKind::LastBad})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown continuous opponent '" + name + "'");
}

bool is_star_kind(ContinuousKind k) {
  return k == ContinuousKind::FirstNonzero || k == ContinuousKind::LastNonzero ||
         k == ContinuousKind::SumMod;
}

StrategyPtr continuous_opponent(ContinuousKind kind, Nat window, std::optional<NatPredicate> pred) {
  if (!is_star_kind(kind) && !pred)
    throw std::invalid_argument(to_string(kind) + " needs a predicate");
  const std::string name = "continuous:" + to_string(kind) + ":" + std::to_string(window);
  return make(name, [kind, window, pred](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p || p->size() != 1) return std::nullopt;
    const Choice& c = (*p)[0];
    if (const FunctionHandle* f = fun(c)) {
      std::optional<Nat> x;
      Nat sum = 0;
      for (Nat i = 0; i < window; ++i) {
        const Nat value = f->query(i);
        switch (kind) {
          case ContinuousKind::FirstNonzero:
            if (value != 0 && !x) x = i;
            break;
          case ContinuousKind::LastNonzero:
            if (value != 0) x = i;
            break;
          case ContinuousKind::SumMod:
            sum += value;
            break;
          case ContinuousKind::FirstBad:
            if (!(*pred)(i, value) && !x) x = i;
            break;
          case ContinuousKind::LastBad:
            if (!(*pred)(i, value)) x = i;
            break;
        }
      }
      if (kind == ContinuousKind::SumMod) x = sum % (window + 1);
      return Decision{v.last(), {0, x.value_or(0)}};
    }
    if (pred && nat(c)) {
      const Nat x = *nat(c);
      Nat y = 0;
      for (Nat cand = 0; cand < kSearchLimit; ++cand)
        if ((*pred)(x, cand)) {
          y = cand;
          break;
        }
      return Decision{v.last(), {0, y}};
    }
    return std::nullopt;
  });
}

StrategyPtr discontinuous_opponent() {
  return make("discontinuous", [](const PlayerView& v) -> std::optional<Decision> {
    auto p = last_path(v);
    if (!p || p->size() != 1 || !fun((*p)[0])) return std::nullopt;
    const FunctionHandle& f = *fun((*p)[0]);
    Nat x = 0;
    for (Nat n = 0; n < kSearchLimit; ++n)
      if (f.peek(n) == 0) {
        x = n;
        break;
      }
    return Decision{v.last(), {0, x}};
  });
}

// ---------------------------------------------------------------------------
// copy-cat

namespace {

Nat flat_size(const Formula& node) {
  Nat n = 0;
  for (const auto& s : node.segments()) n += s.count.value_or(0);
  return n;
}

Nat flat_of(const Formula& node, const Choice& c) {
  Nat n = 0;
  for (std::size_t s = 0; s < c.segment; ++s) n += node.segments()[s].count.value_or(0);
  return n + std::get<Nat>(c.value);
}

Choice choice_of(const Formula& node, Nat flat) {
  for (std::size_t s = 0; s < node.segments().size(); ++s) {
    const Nat size = node.segments()[s].count.value_or(0);
    if (flat < size) return {s, flat};
    flat -= size;
  }
  throw std::out_of_range("flat index past the children");
}

class Copycat : public Strategy {
public:
  // `d_flat`: root ordinal of the conjunctive copy; `e_offset`: root ordinal of
  // the first child of the disjunctive copy.
  Copycat(Formula arena, bool leaf_case, Nat d_flat, Nat e_offset)
      : arena_(std::move(arena)), leaf_case_(leaf_case), d_flat_(d_flat), e_offset_(e_offset) {}

  std::string name() const override { return "copycat"; }

  std::optional<Decision> decide(const PlayerView& v) const override {
    if (v.last() == 0) {
      if (!leaf_case_) return Decision{0, choice_of(arena_, d_flat_)};
      for (Nat i = 0; i < flat_size(arena_); ++i) {
        Choice c = choice_of(arena_, i);
        if (arena_.child(c).value()) return Decision{0, c};
      }
      return std::nullopt;
    }
    auto [copy, rel] = locate(v, v.last());
    if (rel.empty()) return std::nullopt;
    const Nat ch = rel.back();
    rel.pop_back();
    const bool target = !copy;
    for (Nat m : v.view()) {
      auto [c2, r2] = locate(v, m);
      if (c2 != target || r2 != rel) continue;
      const Formula& node = v.move(m).node;
      const Nat flat = (!target && rel.empty()) ? ch + e_offset_ : ch;
      return Decision{m, choice_of(node, flat)};
    }
    return std::nullopt;
  }

private:
  Formula arena_;
  bool leaf_case_;
  Nat d_flat_, e_offset_;

  // (true: conjunctive copy, relative flat path)
  std::pair<bool, std::vector<Nat>> locate(const PlayerView& v, Nat m) const {
    const auto& path = v.move(m).path;
    std::vector<Nat> rel;
    if (path.empty()) return {false, rel};
    const Nat first = flat_of(arena_, path[0]);
    const bool in_d = first == d_flat_;
    if (!in_d) rel.push_back(first - e_offset_);
    Formula node = arena_.child(path[0]);
    for (std::size_t i = 1; i < path.size(); ++i) {
      rel.push_back(flat_of(node, path[i]));
      node = node.child(path[i]);
    }
    return {in_d, rel};
  }
};

}  // namespace

CopycatGame copycat(const Formula& a) {
  if (!a.is_finite()) throw std::invalid_argument("copycat needs a finite formula");
  const Formula ac = canonicalize(a);
  const Formula arena = canonicalize(Formula::disj({a, negate(a)}));
  if (ac.is_leaf()) {
    if (flat_size(arena) != 2) throw std::invalid_argument("formula not of dual shape");
    return {arena, std::make_shared<Copycat>(arena, true, 0, 0)};
  }
  const bool a_is_or = ac.connective() == Connective::Or;
  const Formula e = a_is_or ? ac : negate(ac);
  const Nat e_size = flat_size(e);
  const Nat d_flat = a_is_or ? e_size : 0;
  const Nat e_offset = a_is_or ? 0 : 1;
  if (flat_size(arena) != e_size + 1 || arena.child(choice_of(arena, d_flat)).is_leaf() ||
      arena.child(choice_of(arena, d_flat)).connective() != Connective::And)
    throw std::invalid_argument("formula not of dual shape");
  return {arena, std::make_shared<Copycat>(arena, false, d_flat, e_offset)};
}

// ---------------------------------------------------------------------------

StrategyPtr make_strategy(const std::string& spec, const Oracle& oracle) {
  auto need_f = [&]() -> const NatFunction& {
    if (!oracle.f) throw std::invalid_argument("strategy '" + spec + "' needs --f");
    return *oracle.f;
  };
  auto need_p = [&]() -> const NatPredicate& {
    if (!oracle.p) throw std::invalid_argument("strategy '" + spec + "' needs --P");
    return *oracle.p;
  };
  if (spec == "minimum") return minimum_strategy(need_f());
  if (spec == "epsilon") return epsilon_strategy(need_f());
  if (spec == "choice") return countable_choice_strategy(need_p());
  if (spec == "star") return star_strategy();
  if (spec == "star-refuter") return star_refuter();
  if (spec == "enumerator") return soloviev_enumerator();
  if (spec == "discontinuous") return discontinuous_opponent();
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "pr" && !rest.empty()) return pr_opponent(parse_function(rest));
  if (head == "fixed" && !rest.empty()) {
    const NatFunction g = parse_function(rest);
    return fixed_function_opponent(FunctionHandle(g.name, g.fn));
  }
  if (head == "random" && !rest.empty()) return random_opponent(std::stoull(rest));
  if (head == "continuous") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw std::invalid_argument("continuous:<kind>:<W> expected");
    const ContinuousKind kind = parse_continuous_kind(rest.substr(0, c2));
    const Nat window = std::stoull(rest.substr(c2 + 1));
    if (is_star_kind(kind)) return continuous_opponent(kind, window);
    return continuous_opponent(kind, window, need_p());
  }
  throw std::invalid_argument("unknown strategy '" + spec + "'");
}

std::optional<std::string> implied_goal(const std::string& spec) {
  if (spec == "epsilon") return std::string("ascent");
  return std::nullopt;
}

}  // namespace gamesem
