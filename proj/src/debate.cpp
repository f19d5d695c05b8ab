#include "gamesem/debate.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "gamesem/sexpr.hpp"

namespace gamesem {

using nlohmann::json;

std::string to_string(Role r) { return r == Role::A ? "A" : "B"; }

std::string to_string(const DebateOutcome& o) {
  switch (o.kind) {
    case OutcomeKind::AWins: return "A wins";
    case OutcomeKind::BWins: return "B wins";
    case OutcomeKind::Lasso:
      return "Lasso(" + std::to_string(o.lasso->cycle_start) + "," + std::to_string(o.lasso->cycle_len) + ")";
    case OutcomeKind::BudgetExhausted: return "BudgetExhausted(" + std::to_string(o.steps) + ")";
    case OutcomeKind::Running: return "Running";
  }
  return "?";
}

std::size_t default_budget() {
  if (const char* env = std::getenv("GAMESEM_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 10000;
}

Oracle Scenario::oracle() const {
  Oracle o;
  if (!f.empty()) o.f = parse_function(f);
  if (!p.empty()) o.p = parse_predicate(p);
  return o;
}

Formula resolve_formula(const std::string& name_or_path, const Oracle& oracle) {
  try {
    return build_example(name_or_path, oracle);
  } catch (const std::invalid_argument& e) {
    std::ifstream in(name_or_path);
    if (!in) throw;
    std::stringstream text;
    text << in.rdbuf();
    return read_formula(text.str());
  }
}

namespace {

// Goals must be disjunctive all the way down. Infinite families are probed on
// their first few members.
void check_goal(const Formula& g, int depth) {
  if (g.is_leaf() || depth > 6) return;
  if (g.connective() == Connective::And) throw std::invalid_argument("goal formulas may not contain conjunctions");
  for (const Segment& s : g.segments()) {
    if (s.kind == IndexKind::Function) {
      check_goal(s.child(Index{FunctionHandle::constant(0)}), depth + 1);
      continue;
    }
    bool complete = false;
    for (const Formula& c : enumerate_segment(s, 4, complete)) check_goal(c, depth + 1);
  }
}

bool is_or_node(const Formula& f) { return !f.is_leaf() && f.connective() == Connective::Or; }

}  // namespace

DebateArena build_arena(const Formula& cut, const std::optional<Formula>& goal) {
  DebateArena out;
  out.cut = canonicalize(cut);
  const Formula neg = negate(out.cut);
  if (!goal) {
    out.arena = neg;
    out.rules = {Mode::Debate, std::nullopt};
    out.a = {Player::Abelard, out.cut, {}, std::nullopt};
    out.b = {Player::Eloise, out.arena, {}, std::nullopt};
    return out;
  }
  const Formula g = canonicalize(*goal);
  check_goal(g, 0);
  out.goal = g;

  const bool flat = is_or_node(neg);
  std::vector<Segment> segs = flat ? neg.segments() : std::vector<Segment>{Segment::list({neg})};
  const std::size_t k = segs.size();
  if (is_or_node(g)) {
    for (const Segment& s : g.segments()) segs.push_back(s);
  } else {
    segs.push_back(Segment::list({g}));
  }
  out.arena = Formula::node(Connective::Or, std::move(segs));
  out.rules = {Mode::Debate, GoalStart{k, 0}};
  if (flat)
    out.a = {Player::Abelard, out.cut, {}, k};
  else
    out.a = {Player::Abelard, out.cut, {Choice{0, Nat{0}}}, std::nullopt};
  out.b = {Player::Eloise, out.arena, {}, std::nullopt};
  return out;
}

InteractionSeq DebateTrace::pointers() const {
  if (outcome.kind == OutcomeKind::Lasso && outcome.lasso) {
    auto phi = state.pointers().pointers();
    return InteractionSeq::lasso(phi, *outcome.lasso);
  }
  return state.pointers();
}

DebateTrace run_debate(StrategyPtr a, StrategyPtr b, const Formula& cut,
                       const std::optional<Formula>& goal, const DebateOptions& options) {
  DebateArena setup = build_arena(cut, goal);
  const std::string a_name = a->name(), b_name = b->name();
  Seat eloise{std::move(b), setup.b};
  Seat abelard{std::move(a), setup.a};

  std::optional<Lasso> found;
  std::function<bool(const GameState&)> stop;
  if (options.detect_lasso) {
    stop = [&](const GameState& s) {
      found = detect_lasso(s, options.min_periods);
      return found.has_value();
    };
  }
  RunResult r = run_game(GameState(setup.arena, setup.rules), eloise, abelard, options.budget, stop);

  DebateOutcome outcome;
  outcome.steps = r.state.stage() - 1;
  switch (r.end) {
    case RunEnd::Finished:
      outcome.kind = r.state.status() == Status::EloiseWins ? OutcomeKind::BWins : OutcomeKind::AWins;
      outcome.reason = r.state.reason();
      break;
    case RunEnd::BudgetExhausted:
      outcome.kind = OutcomeKind::BudgetExhausted;
      outcome.reason = "no winner within " + std::to_string(options.budget) + " moves";
      break;
    case RunEnd::Stopped:
      outcome.kind = OutcomeKind::Lasso;
      outcome.lasso = found;
      outcome.reason = "the play repeats";
      break;
  }
  return DebateTrace{std::move(setup), std::move(r.state), std::move(outcome), a_name, b_name, std::nullopt};
}

DebateTrace run_scenario(const Scenario& s, const DebateOptions& options) {
  Scenario filled = s;
  const Oracle oracle = s.oracle();
  if (filled.goal.empty())
    if (auto implied = implied_goal(s.b)) filled.goal = *implied;
  const Formula cut = resolve_formula(s.cut, oracle);
  std::optional<Formula> goal;
  if (!filled.goal.empty()) goal = resolve_formula(filled.goal, oracle);
  if (s.classical) {
    // ABE = A, ELO = B on the cut itself; no goal and no lasso search
    filled.goal.clear();
    DebateArena setup;
    setup.cut = setup.arena = canonicalize(cut);
    setup.a = direct_perspective(setup.arena, Player::Abelard);
    setup.b = direct_perspective(setup.arena, Player::Eloise);
    RunResult r = play_classical(setup.arena, make_strategy(s.b, oracle), make_strategy(s.a, oracle), options.budget);
    DebateOutcome o;
    o.steps = r.state.stage() - 1;
    o.reason = r.state.reason();
    switch (r.state.status()) {
      case Status::EloiseWins: o.kind = OutcomeKind::BWins; break;
      case Status::AbelardWins: o.kind = OutcomeKind::AWins; break;
      default: o.kind = OutcomeKind::BudgetExhausted;
    }
    return DebateTrace{std::move(setup), std::move(r.state), std::move(o), s.a, s.b, filled};
  }
  DebateTrace t = run_debate(make_strategy(s.a, oracle), make_strategy(s.b, oracle), cut, goal, options);
  t.scenario = filled;
  return t;
}

// Lasso detection.
//
// A candidate (P, L) with s0 = max(P, 1) is accepted once positions s0 .. stage-1
// hold at least min_periods full periods and every move n >= s0+L agrees with
// move n-L: same mover, same family and depth, and the lasso pointer rule
// (phi(n) = phi(n-L) when that is below P, phi(n-L)+L otherwise). Payloads may
// drift only along an arithmetic progression across rounds. For function
// payloads the progression is read off (update count, last update); natural
// payloads may drift only when some slot plays functions whose update count
// grows, which is then the round parameter. Without it a drifting natural
// payload (an enumeration 0, 1, 2, ...) is not a repetition.
//
// Candidates are searched with P <= 64 and L <= 32, which keeps the check
// cheap enough to run after every move.

namespace {

constexpr Nat kMaxCycleStart = 64;
constexpr Nat kMaxCycleLen = 32;

struct Signature {
  bool function = false;
  std::string base;
  std::vector<long long> values;  // nat: {v}; function: {count, last x, last y}
};

Signature signature_of(const PlayedMove& m) {
  Signature s;
  if (const auto* f = std::get_if<FunctionHandle>(&m.choice.value)) {
    s.function = true;
    s.base = f->base_name();
    const auto& u = f->updates();
    const long long x = u.empty() ? 0 : static_cast<long long>(u.back().first);
    const long long y = u.empty() ? 0 : static_cast<long long>(u.back().second);
    s.values = {static_cast<long long>(u.size()), x, y};
  } else {
    s.values = {static_cast<long long>(std::get<Nat>(m.choice.value))};
  }
  return s;
}

template <class PointerAt>
bool pointer_rule(Nat n, Nat len, Nat cycle_start, const PointerAt& phi) {
  const Nat earlier = phi(n - len);
  return earlier < cycle_start ? phi(n) == earlier : phi(n) == earlier + len;
}

bool game_candidate(const GameState& st, Nat P, Nat L, bool any_function) {
  const Nat s0 = std::max<Nat>(P, 1);
  auto phi = [&](Nat n) { return st.move(n).pointer; };
  bool nat_drift = false, round_param = false;
  for (Nat n = s0 + L; n < st.stage(); ++n) {
    const PlayedMove& now = st.move(n);
    const PlayedMove& before = st.move(n - L);
    if (now.player != before.player || now.choice.segment != before.choice.segment ||
        now.path.size() != before.path.size())
      return false;
    if (!pointer_rule(n, L, P, phi)) return false;
    const Signature a = signature_of(now);
    const Signature b = signature_of(before);
    if (a.function != b.function || a.base != b.base) return false;
    const bool third = n >= s0 + 2 * L;
    const Signature c = third ? signature_of(st.move(n - 2 * L)) : Signature{};
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const long long d = a.values[i] - b.values[i];
      if (third && d != b.values[i] - c.values[i]) return false;
      if (d != 0 && !a.function) {
        if (!any_function) return false;  // no round parameter can show up later
        nat_drift = true;
      }
      if (d > 0 && a.function && i == 0) round_param = true;
    }
  }
  return !nat_drift || round_param;
}

}  // namespace

std::optional<Lasso> detect_lasso(const GameState& state, Nat min_periods) {
  const Nat stage = state.stage();
  if (min_periods == 0) min_periods = 1;
  bool any_function = false;
  for (Nat n = 1; n < stage && !any_function; ++n)
    any_function = std::holds_alternative<FunctionHandle>(state.move(n).choice.value);
  for (Nat P = 0; P <= kMaxCycleStart && P < stage; ++P) {
    const Nat s0 = std::max<Nat>(P, 1);
    if (stage <= s0) break;
    const Nat max_len = std::min<Nat>(kMaxCycleLen, (stage - s0) / min_periods);
    for (Nat L = 1; L <= max_len; ++L) {
      if (!game_candidate(state, P, L, any_function)) continue;
      const Lasso shape{P, L, L};
      auto phi = state.pointers().pointers();
      phi.resize(s0 + L - 1);
      try {
        const InteractionSeq seq = InteractionSeq::lasso(phi, shape);
        if (validate(seq).ok) return shape;
      } catch (const InvalidSequence&) {
      }
    }
  }
  return std::nullopt;
}

std::optional<Lasso> detect_lasso(const InteractionSeq& seq, Nat min_periods) {
  if (seq.is_lasso()) return seq.shape();
  const Nat stage = seq.size() + 1;
  if (min_periods == 0) min_periods = 1;
  auto phi = [&](Nat n) { return seq.phi(n); };
  for (Nat P = 0; P <= kMaxCycleStart && P < stage; ++P) {
    const Nat s0 = std::max<Nat>(P, 1);
    if (stage <= s0) break;
    const Nat max_len = std::min<Nat>(kMaxCycleLen, (stage - s0) / min_periods);
    for (Nat L = 1; L <= max_len; ++L) {
      bool ok = true;
      for (Nat n = s0 + L; n < stage && ok; ++n) ok = pointer_rule(n, L, P, phi);
      if (!ok) continue;
      auto t = seq.pointers();
      t.resize(s0 + L - 1);
      try {
        const Lasso shape{P, L, L};
        if (validate(InteractionSeq::lasso(t, shape)).ok) return shape;
      } catch (const InvalidSequence&) {
      }
    }
  }
  return std::nullopt;
}

DebateBlame blame_role(const DebateTrace& trace) {
  if (trace.outcome.kind != OutcomeKind::Lasso) throw std::invalid_argument("blame needs a lasso outcome");
  const Role odd = role_of(trace.state.first_mover());
  const Role even = odd == Role::A ? Role::B : Role::A;
  Blame b = blame(trace.pointers(), to_string(odd), to_string(even));
  const Role r = b.blamed == "A" ? Role::A : Role::B;
  return {std::move(b), r};
}

std::string move_label(const DebateTrace& trace, Nat n) {
  if (n == 0) return "start";
  const PlayedMove& m = trace.state.move(n);
  return choice_label(trace.state.move(m.pointer).node, m.choice);
}

ExportFormat parse_format(const std::string& name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "dot") return ExportFormat::Dot;
  if (name == "phi" || name == "phi-lines") return ExportFormat::PhiLines;
  throw std::invalid_argument("unknown format '" + name + "' (json, dot, phi)");
}

namespace {

std::string kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::AWins: return "AWins";
    case OutcomeKind::BWins: return "BWins";
    case OutcomeKind::Lasso: return "Lasso";
    case OutcomeKind::BudgetExhausted: return "BudgetExhausted";
    case OutcomeKind::Running: return "Running";
  }
  return "?";
}

json payload_json(const Choice& c) {
  json p;
  p["segment"] = c.segment;
  if (const auto* f = std::get_if<FunctionHandle>(&c.value)) {
    p["base"] = f->base_name();
    json u = json::array();
    for (const auto& [x, y] : f->updates()) u.push_back({x, y});
    p["updates"] = u;
  } else {
    p["index"] = std::get<Nat>(c.value);
  }
  return p;
}

Choice payload_choice(const json& p) {
  Choice c;
  c.segment = p.at("segment").get<std::size_t>();
  if (p.contains("base")) {
    FunctionHandle f = FunctionHandle::from_base_name(p.at("base").get<std::string>());
    for (const auto& u : p.at("updates")) f = f.updated(u.at(0).get<Nat>(), u.at(1).get<Nat>());
    c.value = f;
  } else {
    c.value = p.at("index").get<Nat>();
  }
  return c;
}

std::string to_json(const DebateTrace& t) {
  json j;
  j["version"] = 1;
  if (t.scenario) {
    j["cut"] = t.scenario->cut;
    j["goal"] = t.scenario->goal.empty() ? json(nullptr) : json(t.scenario->goal);
    j["oracle"] = {{"f", t.scenario->f}, {"p", t.scenario->p}};
    j["a"] = t.scenario->a;
    j["b"] = t.scenario->b;
    if (t.scenario->classical) j["mode"] = "classical";
  } else {
    j["cut"] = t.setup.cut.head();
    j["goal"] = t.setup.goal ? json(t.setup.goal->head()) : json(nullptr);
    j["a"] = t.a_name;
    j["b"] = t.b_name;
  }
  json moves = json::array();
  for (Nat n = 0; n < t.state.stage(); ++n) {
    const PlayedMove& m = t.state.move(n);
    json e;
    e["i"] = n;
    e["role"] = to_string(t.role(n));
    if (n == 0) {
      e["kind"] = "start";
      e["payload"] = nullptr;
      e["phi"] = nullptr;
    } else {
      const bool fn = std::holds_alternative<FunctionHandle>(m.choice.value);
      e["kind"] = fn ? "function" : m.player == Player::Eloise ? "disjunct" : "conjunct";
      e["payload"] = payload_json(m.choice);
      e["phi"] = m.pointer;
      e["reentry"] = m.pointer + 1 < n;
    }
    e["label"] = move_label(t, n);
    if (m.node.is_leaf()) e["leaf"] = m.node.value();
    moves.push_back(e);
  }
  j["moves"] = moves;
  j["outcome"] = {{"kind", kind_name(t.outcome.kind)}, {"steps", t.outcome.steps}, {"reason", t.outcome.reason}};
  if (t.outcome.lasso) j["lasso"] = {{"prefix", t.outcome.lasso->cycle_start}, {"period", t.outcome.lasso->cycle_len}};
  return j.dump(2) + "\n";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Definite segments drawn as nested clusters around the moves they span, with
// one dashed arc per pointer.
std::string to_dot(const DebateTrace& t) {
  const Nat stage = t.state.stage();
  const InteractionSeq seq = t.state.pointers();
  std::vector<Span> spans = definite_segments(seq, stage).segments;
  if (!nest_check(spans).ok) spans.clear();
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.left != b.left ? a.left < b.left : a.right > b.right;
  });

  std::ostringstream out;
  out << "digraph debate {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  auto node = [&](Nat n, const std::string& indent) {
    out << indent << "m" << n << " [label=\"" << n << " " << to_string(t.role(n)) << ": "
        << dot_escape(move_label(t, n)) << "\"];\n";
  };
  std::vector<Span> open;
  std::size_t next = 0, cluster = 0;
  for (Nat n = 0; n < stage; ++n) {
    while (!open.empty() && open.back().right < n) {
      open.pop_back();
      out << std::string(2 + 2 * open.size(), ' ') << "}\n";
    }
    while (next < spans.size() && spans[next].left == n) {
      out << std::string(2 + 2 * open.size(), ' ') << "subgraph cluster_" << cluster++ << " {\n"
          << std::string(4 + 2 * open.size(), ' ') << "label=\"" << to_string(spans[next]) << "\";\n";
      open.push_back(spans[next++]);
    }
    node(n, std::string(2 + 2 * open.size(), ' '));
  }
  while (!open.empty()) {
    open.pop_back();
    out << std::string(2 + 2 * open.size(), ' ') << "}\n";
  }
  for (Nat n = 1; n < stage; ++n) {
    out << "  m" << n - 1 << " -> m" << n << ";\n";
    out << "  m" << n << " -> m" << t.state.move(n).pointer << " [style=dashed, constraint=false];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_trace(const DebateTrace& trace, ExportFormat format) {
  switch (format) {
    case ExportFormat::Json: return to_json(trace);
    case ExportFormat::Dot: {
      // the phi lines ride along as comments so the file can be analysed again
      std::string dot = to_dot(trace);
      std::istringstream lines(export_trace(trace, ExportFormat::PhiLines));
      std::string block = "  // phi-lines\n", line;
      while (std::getline(lines, line)) block += "  // " + line + "\n";
      return dot.insert(dot.find('\n') + 1, block);
    }
    case ExportFormat::PhiLines: {
      std::ostringstream out;
      InteractionSeq seq = trace.pointers();
      if (seq.is_lasso()) {
        auto phi = seq.pointers();
        phi.resize(seq.slot_begin() + seq.shape()->cycle_len - 1);
        seq = InteractionSeq::lasso(phi, *seq.shape());
      }
      write_phi_lines(out, seq);
      return out.str();
    }
  }
  return {};
}

ImportedTrace import_trace(const std::string& text) {
  const json j = json::parse(text);
  if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported trace version");
  std::vector<Nat> phi;
  for (const auto& m : j.at("moves"))
    if (m.at("i").get<Nat>() > 0) phi.push_back(m.at("phi").get<Nat>());

  std::optional<Lasso> shape;
  if (j.contains("lasso")) {
    const Nat p = j["lasso"].at("prefix").get<Nat>(), l = j["lasso"].at("period").get<Nat>();
    shape = Lasso{p, l, l};
  }
  ImportedTrace out;
  out.pointers = shape ? InteractionSeq::lasso(phi, *shape) : InteractionSeq::finite(phi);

  const std::string cut = j.value("cut", "");
  Scenario s;
  s.cut = cut;
  if (j.contains("goal") && !j["goal"].is_null()) s.goal = j["goal"].get<std::string>();
  if (j.contains("oracle")) {
    s.f = j["oracle"].value("f", "");
    s.p = j["oracle"].value("p", "");
  }
  s.a = j.value("a", "");
  s.b = j.value("b", "");
  s.classical = j.value("mode", "") == "classical";
  const Oracle oracle = s.oracle();
  Formula cut_f = Formula::truth();
  std::optional<Formula> goal_f;
  try {
    cut_f = resolve_formula(s.cut, oracle);
    if (!s.goal.empty()) goal_f = resolve_formula(s.goal, oracle);
  } catch (const std::invalid_argument&) {
    return out;  // not rebuildable: pointers only
  }

  DebateArena setup;
  if (s.classical) {
    setup.cut = setup.arena = canonicalize(cut_f);
    setup.a = direct_perspective(setup.arena, Player::Abelard);
    setup.b = direct_perspective(setup.arena, Player::Eloise);
  } else {
    setup = build_arena(cut_f, goal_f);
  }
  GameState state(setup.arena, setup.rules);
  for (const auto& m : j.at("moves")) {
    if (m.at("i").get<Nat>() == 0) continue;
    state.play({m.at("phi").get<Nat>(), payload_choice(m.at("payload"))});
  }
  DebateOutcome outcome;
  outcome.steps = state.stage() - 1;
  const json& o = j.at("outcome");
  outcome.reason = o.value("reason", "");
  const std::string kind = o.at("kind").get<std::string>();
  if (kind == "AWins") outcome.kind = OutcomeKind::AWins;
  else if (kind == "BWins") outcome.kind = OutcomeKind::BWins;
  else if (kind == "Lasso") outcome.kind = OutcomeKind::Lasso;
  else if (kind == "Running") outcome.kind = OutcomeKind::Running;
  else outcome.kind = OutcomeKind::BudgetExhausted;
  outcome.lasso = shape;
  if (state.status() != Status::Running) {
    const OutcomeKind replayed = state.status() == Status::EloiseWins ? OutcomeKind::BWins : OutcomeKind::AWins;
    if (replayed != outcome.kind) throw std::invalid_argument("recorded outcome disagrees with the replayed moves");
  }
  out.trace = DebateTrace{std::move(setup), std::move(state), std::move(outcome), s.a, s.b, s};
  return out;
}

}  // namespace gamesem
