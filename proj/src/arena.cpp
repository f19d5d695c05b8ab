#include "gamesem/arena.hpp"

#include <algorithm>
#include <set>

namespace gamesem {

Player opponent(Player p) { return p == Player::Eloise ? Player::Abelard : Player::Eloise; }

Player owner(const Formula& node) {
  return !node.is_leaf() && node.connective() == Connective::And ? Player::Abelard : Player::Eloise;
}

std::string to_string(Player p) { return p == Player::Eloise ? "Eloise" : "Abelard"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::Running: return "Running";
    case Status::EloiseWins: return "EloiseWins";
    case Status::AbelardWins: return "AbelardWins";
  }
  return "?";
}

std::string describe(const Decision& d) {
  return "#" + std::to_string(d.choice.segment) + ":" + to_string(d.choice.value) + " @" +
         std::to_string(d.pointer);
}

GameState::GameState(Formula root, Rules rules)
    : root_(std::move(root)), rules_(std::move(rules)), first_(owner(root_)) {
  PlayedMove start;
  start.player = first_;
  start.start = true;
  start.node = root_;
  moves_.push_back(std::move(start));
}

Player GameState::to_move() const { return stage() % 2 == 1 ? first_ : opponent(first_); }

std::vector<Nat> GameState::view(Nat n) const {
  std::vector<Nat> out;
  if (n == 0) return out;
  Nat m = n - 1;
  while (true) {
    out.push_back(m);
    if (m == 0 || phi_[m] == 0) break;
    m = phi_[m] - 1;
  }
  return out;
}

InteractionSeq GameState::pointers() const {
  return InteractionSeq::finite({phi_.begin() + 1, phi_.end()});
}

bool GameState::in_goal(const Choice& c) const {
  if (!rules_.goal) return false;
  if (c.segment != rules_.goal->segment) return c.segment > rules_.goal->segment;
  const Nat* i = std::get_if<Nat>(&c.value);
  return !i || *i >= rules_.goal->index;
}

std::optional<std::string> GameState::check(const Decision& d) const {
  if (status_ != Status::Running) return "the game is over";
  const Nat n = stage();
  if (d.pointer >= n) return "pointer " + std::to_string(d.pointer) + " is not an earlier move";
  const auto v = view(n);
  if (std::find(v.begin(), v.end(), d.pointer) == v.end())
    return "move " + std::to_string(d.pointer) + " is not in the view";
  const Player mover = to_move();
  if (rules_.mode == Mode::Classical && mover == Player::Abelard && d.pointer != n - 1)
    return "Abelard must answer the previous move";
  const Formula& target = moves_[d.pointer].node;
  if (target.is_leaf()) return "move " + std::to_string(d.pointer) + " reached a leaf";
  if (owner(target) != mover)
    return "the node reached by move " + std::to_string(d.pointer) + " belongs to " +
           to_string(opponent(mover));
  if (d.choice.segment >= target.segments().size()) return "no such segment";
  const Segment& s = target.segments()[d.choice.segment];
  const bool is_nat = std::holds_alternative<Nat>(d.choice.value);
  if ((s.kind == IndexKind::Natural) != is_nat) return "payload kind does not match the family";
  if (is_nat && s.count && std::get<Nat>(d.choice.value) >= *s.count) return "index out of range";
  return std::nullopt;
}

void GameState::finish(Status s, std::string why) {
  status_ = s;
  reason_ = std::move(why);
}

void GameState::play(const Decision& d) {
  const Player mover = to_move();
  if (auto bad = check(d)) throw IllegalMove(to_string(mover) + ": " + *bad, mover);
  PlayedMove m;
  m.player = mover;
  m.pointer = d.pointer;
  m.choice = d.choice;
  m.node = moves_[d.pointer].node.child(d.choice);
  m.path = moves_[d.pointer].path;
  m.path.push_back(d.choice);
  moves_.push_back(m);
  phi_.push_back(d.pointer);

  const PlayedMove& last = moves_.back();
  if (!last.node.is_leaf()) return;
  const bool value = last.node.value();
  const std::string at = " at leaf " + last.node.head();
  if (rules_.mode == Mode::Classical) {
    if (mover == Player::Eloise)
      finish(value ? Status::EloiseWins : Status::AbelardWins, "Eloise reached" + at);
    else if (value)
      finish(Status::EloiseWins, "Abelard reached" + at);
  } else if (mover == Player::Eloise && in_goal(last.path.front())) {
    finish(value ? Status::EloiseWins : Status::AbelardWins, "goal reached" + at);
  }
}

void GameState::pass() {
  if (status_ != Status::Running) return;
  const Player mover = to_move();
  const Formula& node = moves_.back().node;
  const bool good = node.is_leaf() && node.value() == (mover == Player::Eloise);
  const Status win = mover == Player::Eloise ? Status::EloiseWins : Status::AbelardWins;
  const Status lose = mover == Player::Eloise ? Status::AbelardWins : Status::EloiseWins;
  if (good)
    finish(win, to_string(mover) + " rests on leaf " + node.head());
  else
    finish(lose, to_string(mover) + " has no answer");
}

std::vector<Decision> legal_moves(const GameState& state, std::size_t limit) {
  std::vector<Decision> out;
  if (state.status() != Status::Running) return out;
  const Player mover = state.to_move();
  for (Nat p : state.view()) {
    if (state.rules().mode == Mode::Classical && mover == Player::Abelard && p != state.stage() - 1)
      continue;
    const Formula& node = state.move(p).node;
    if (node.is_leaf() || owner(node) != mover) continue;
    for (std::size_t s = 0; s < node.segments().size(); ++s) {
      const Segment& seg = node.segments()[s];
      if (seg.kind == IndexKind::Function) {
        out.push_back({p, {s, FunctionHandle::constant(0)}});
        out.push_back({p, {s, FunctionHandle::constant(1)}});
        continue;
      }
      Nat n = seg.count ? *seg.count : seg.bound ? *seg.bound : limit;
      n = std::min<Nat>(n, limit);
      for (Nat i = 0; i < n; ++i) out.push_back({p, {s, i}});
    }
  }
  return out;
}

Perspective direct_perspective(const Formula& arena, Player player) {
  Perspective p;
  p.player = player;
  p.own_root = player == Player::Eloise ? arena : negate(arena);
  return p;
}

PlayerView::PlayerView(const GameState& state, const Perspective& perspective)
    : state_(state), perspective_(perspective), view_(state.view()) {}

bool PlayerView::visible(Nat m) const {
  return std::find(view_.begin(), view_.end(), m) != view_.end();
}

std::optional<std::vector<Choice>> PlayerView::own_path(Nat m) const {
  const auto& path = state_.move(m).path;
  if (perspective_.root_segments) {
    if (!path.empty() && path.front().segment >= *perspective_.root_segments) return std::nullopt;
    return path;
  }
  const auto& prefix = perspective_.prefix;
  if (path.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), path.begin()))
    return std::nullopt;
  return std::vector<Choice>(path.begin() + prefix.size(), path.end());
}

std::optional<Formula> PlayerView::own_node(Nat m) const {
  auto path = own_path(m);
  if (!path) return std::nullopt;
  Formula node = perspective_.own_root;
  for (const Choice& c : *path) node = node.child(c);
  return node;
}

std::optional<Nat> PlayerView::find(const std::vector<Choice>& path) const {
  for (Nat m : view_) {
    auto own = own_path(m);
    if (own && *own == path) return m;
  }
  return std::nullopt;
}

RunResult run_game(GameState state, const Seat& eloise, const Seat& abelard, std::size_t budget,
                   const std::function<bool(const GameState&)>& stop) {
  std::size_t played = 0;
  while (state.status() == Status::Running) {
    if (played >= budget) return {std::move(state), RunEnd::BudgetExhausted};
    const Player mover = state.to_move();
    const Seat& seat = mover == Player::Eloise ? eloise : abelard;
    std::optional<Decision> d;
    {
      PlayerView view(state, seat.perspective);
      d = seat.strategy->decide(view);
    }
    if (!d) {
      state.pass();
      break;
    }
    if (auto bad = state.check(*d))
      throw IllegalMove(seat.strategy->name() + " (" + to_string(mover) + ") played " + describe(*d) +
                            ": " + *bad,
                        mover);
    state.play(*d);
    ++played;
    if (stop && state.status() == Status::Running && stop(state)) return {std::move(state), RunEnd::Stopped};
  }
  return {std::move(state), RunEnd::Finished};
}

RunResult play_classical(const Formula& formula, StrategyPtr eloise, StrategyPtr abelard,
                         std::size_t budget) {
  Seat e{std::move(eloise), direct_perspective(formula, Player::Eloise)};
  Seat a{std::move(abelard), direct_perspective(formula, Player::Abelard)};
  return run_game(GameState(formula), e, a, budget);
}

GameState replay(const GameState& trace, Nat upto,
                 const std::function<std::optional<FunctionHandle>(Nat, const FunctionHandle&)>& substitute) {
  GameState out(trace.root(), trace.rules());
  for (Nat n = 1; n < upto && n < trace.stage(); ++n) {
    Decision d{trace.move(n).pointer, trace.move(n).choice};
    if (auto* f = std::get_if<FunctionHandle>(&d.choice.value)) {
      std::optional<FunctionHandle> swapped = substitute ? substitute(n, *f) : std::nullopt;
      d.choice.value = swapped ? swapped->fresh() : f->fresh();
    }
    out.play(d);
  }
  return out;
}

namespace {

bool same_decision(const std::optional<Decision>& a, const std::optional<Decision>& b,
                   Nat window, std::optional<Nat> skip) {
  if (!a || !b) return a.has_value() == b.has_value();
  if (a->pointer != b->pointer || a->choice.segment != b->choice.segment) return false;
  const auto* fa = std::get_if<FunctionHandle>(&a->choice.value);
  const auto* fb = std::get_if<FunctionHandle>(&b->choice.value);
  if (!fa && !fb) return std::get<Nat>(a->choice.value) == std::get<Nat>(b->choice.value);
  if (!fa || !fb) return false;
  for (Nat x = 0; x < window; ++x)
    if (x != skip && fa->peek(x) != fb->peek(x)) return false;
  return true;
}

std::string show(const std::optional<Decision>& d) { return d ? describe(*d) : "pass"; }

}  // namespace

ContinuityVerdict continuity_audit(const Strategy& strategy, const Perspective& perspective,
                                   const GameState& trace, std::size_t trials) {
  ContinuityVerdict verdict;
  for (Nat n = 1; n <= trace.stage(); ++n) {
    GameState base = replay(trace, n);
    if (base.status() != Status::Running || base.to_move() != perspective.player) continue;
    std::optional<Decision> original;
    {
      PlayerView view(base, perspective);
      original = strategy.decide(view);
    }
    ++verdict.decisions_checked;

    std::size_t tried = 0;
    for (Nat j = 1; j < base.stage() && tried < trials; ++j) {
      const auto* f = std::get_if<FunctionHandle>(&base.move(j).choice.value);
      if (!f) continue;
      const std::set<Nat> queried = f->queried();
      const Nat top = queried.empty() ? 0 : *queried.rbegin() + 1;
      const Nat window = top + 8;
      for (Nat p = 0; p < window && tried < trials; ++p) {
        if (queried.count(p)) continue;
        const Nat old = f->peek(p);
        for (Nat value : {Nat{0}, old + 1}) {
          if (value == old || tried >= trials) continue;
          ++tried;
          ++verdict.perturbations;
          const FunctionHandle changed = f->updated(p, value);
          GameState alt = replay(trace, n, [&](Nat idx, const FunctionHandle& g) -> std::optional<FunctionHandle> {
            if (idx == j) return changed;
            return g;
          });
          if (alt.status() != Status::Running) continue;
          std::optional<Decision> after;
          {
            PlayerView view(alt, perspective);
            after = strategy.decide(view);
          }
          if (!same_decision(original, after, window, p)) {
            verdict.consistent = false;
            verdict.witness = ContinuityWitness{n, j, p, old, value, show(original), show(after)};
            return verdict;
          }
        }
      }
    }
  }
  return verdict;
}

}  // namespace gamesem
