// gamesem: run debates, analyse pointer traces, play interactively.
//
// Exit codes: 0 for a decided debate or a detected lasso, 2 when the move
// budget runs out, 1 for errors (bad arguments, illegal moves, bad traces).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gamesem/debate.hpp"

using namespace gamesem;

namespace {

std::string join(const std::vector<Nat>& v, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string spans(const std::vector<Span>& s) {
  std::string out;
  for (const Span& x : s) out += to_string(x);
  return out.empty() ? "(none)" : out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string format_for(const std::string& path, const std::string& format) {
  if (!format.empty()) return format;
  auto ends = [&](const std::string& ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends(".dot")) return "dot";
  if (ends(".phi") || ends(".txt")) return "phi";
  return "json";
}

// The line that names the result of a debate.
std::string headline(const DebateTrace& t) {
  const DebateOutcome& o = t.outcome;
  switch (o.kind) {
    case OutcomeKind::AWins:
    case OutcomeKind::BWins: {
      const Nat last = t.state.stage() - 1;
      const bool by_move = t.state.move(last).node.is_leaf() && t.state.reason().find("goal") == 0;
      if (by_move) return to_string(o) + ": " + move_label(t, last);
      // A pass win: show the leaf as the winner reads it in its own formula.
      const bool a_won = o.kind == OutcomeKind::AWins;
      PlayerView v(t.state, a_won ? t.setup.a : t.setup.b);
      if (auto node = v.own_node(last); node && node->is_leaf())
        return to_string(o) + ": rests on " + node->head();
      return to_string(o) + ": " + t.state.reason();
    }
    case OutcomeKind::Lasso: {
      std::string line = to_string(o);
      try {
        line += "; blame: " + to_string(blame_role(t).role);
      } catch (const std::exception& e) {
        line += "; blame undecided (" + std::string(e.what()) + ")";
      }
      return line;
    }
    case OutcomeKind::BudgetExhausted:
    case OutcomeKind::Running: return to_string(o);
  }
  return "?";
}

int exit_code(const DebateOutcome& o) { return o.kind == OutcomeKind::BudgetExhausted ? 2 : 0; }

struct RunArgs {
  Scenario s;
  std::size_t budget = default_budget();
  std::string out, format;
  bool no_lasso = false;
  Nat periods = 3;
};

int cmd_run(const RunArgs& r) {
  DebateOptions opt;
  opt.budget = r.budget;
  opt.detect_lasso = !r.no_lasso;
  opt.min_periods = r.periods;
  const DebateTrace t = run_scenario(r.s, opt);
  std::cout << headline(t) << "\n";
  auto phi = t.state.pointers().pointers();
  const std::size_t total = phi.size();
  if (total > 200) phi.resize(200);  // the file export keeps all of it
  std::cout << "phi: " << join(phi) << (total > 200 ? ",... (" + std::to_string(total) + " moves)" : "") << "\n";
  if (!r.out.empty()) write_file(r.out, export_trace(t, parse_format(format_for(r.out, r.format))));
  return exit_code(t.outcome);
}

struct AnalyzeArgs {
  std::string trace;
  std::optional<Nat> at;
  bool omega = false;
  std::string odd = "A", even = "B";
  std::optional<Nat> choice;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const std::string text = read_file(a.trace);
  InteractionSeq seq;
  std::optional<DebateTrace> trace;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    ImportedTrace imp = import_trace(text);
    seq = imp.pointers;
    trace = std::move(imp.trace);
  } else if (text.compare(first == std::string::npos ? 0 : first, 7, "digraph") == 0) {
    // DOT export: the phi lines are in the comment block
    std::istringstream in(text);
    std::string line, phi;
    bool inside = false;
    while (std::getline(in, line)) {
      const auto c = line.find("// ");
      if (c == std::string::npos) {
        if (inside) break;
        continue;
      }
      const std::string body = line.substr(c + 3);
      if (body == "phi-lines") inside = true;
      else if (inside) phi += body + "\n";
    }
    if (!inside) throw std::invalid_argument("DOT file without a phi-lines block");
    std::istringstream lines(phi);
    seq = read_phi_lines(lines);
  } else {
    std::istringstream in(text);
    seq = read_phi_lines(in);
  }
  const Validation v = validate(seq);
  if (!v.ok) {
    std::cerr << "invalid trace at position " << (v.position ? std::to_string(*v.position) : "?") << ": " << v.reason
              << "\n";
    return 1;
  }
  const Nat n = a.at ? *a.at : trace ? trace->state.stage() : seq.size() + 1;
  if (!seq.is_lasso() && n > seq.size() + 1) {
    std::cerr << "--at " << n << " is past the end of the trace (" << seq.size() << " moves)\n";
    return 1;
  }
  std::cout << "positions: " << seq.size() << (seq.is_lasso() ? " (lasso template)" : "") << "\n";
  std::vector<Nat> vw = view(seq, n);
  std::cout << "V(" << n << ") = {" << join(vw, ", ") << "}\n";
  const InteractionSeq upto = seq.is_lasso() ? seq.unroll(n) : seq;
  std::cout << "partition: " << spans(segments_partition(upto, n)) << "\n";
  const DefiniteSegments d = definite_segments(seq, n);
  std::cout << "definite: " << spans(d.segments) << (d.provisional ? " (provisional)" : "") << "\n";
  const NestResult nest = nest_check(d.segments);
  if (nest.ok)
    std::cout << "nesting: ok\n";
  else
    std::cout << "nesting: violated by " << to_string(nest.violation->first) << " and "
              << to_string(nest.violation->second) << "\n";

  if (a.omega) {
    if (!seq.is_lasso()) {
      std::cerr << "--omega needs a lasso trace\n";
      return 1;
    }
    std::string odd = a.odd, even = a.even;
    if (trace) {
      odd = to_string(role_of(trace->state.first_mover()));
      even = odd == "A" ? "B" : "A";
    }
    try {
      const Blame b = blame(seq, odd, even);
      std::cout << "chain " << b.chain.to_string() << "; parity " << (b.chain_parity ? "odd" : "even")
                << "; blame " << b.blamed << "\n";
      const Nat choice = a.choice ? *a.choice : b.chain.at(1);
      const TransfiniteSeq ext = extend_transfinite(seq, choice);
      std::cout << "extension: phi(ω) = " << choice << ", V(ω+1) = " << ext.view(Position::omega(1)).to_string()
                << (validate(ext).ok ? "" : " (invalid)") << "\n";
    } catch (const NonAlternating& e) {
      std::cout << "chain " << omega_chain(seq).to_string() << "; parity mixed; blame undecided\n";
    }
  }
  return 0;
}

struct PlayArgs {
  Scenario s;
  std::string vs;
  std::string as = "abe";
  std::string out = "gamesem-play.json";
  std::size_t budget = 200;
};

// One decision typed by the human player. Returns nullopt for a pass; throws
// std::invalid_argument for unreadable input.
std::optional<Decision> read_decision(const std::string& line, const std::vector<Decision>& legal, bool& quit) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  if (word == "quit" || word == "q") {
    quit = true;
    return std::nullopt;
  }
  if (word == "pass") return std::nullopt;
  if (word == "m") {  // m <pointer> <segment> <index>
    Decision d;
    Nat idx = 0;
    if (!(in >> d.pointer >> d.choice.segment >> idx)) throw std::invalid_argument("usage: m <pointer> <segment> <index>");
    d.choice.value = idx;
    return d;
  }
  if (word == "f") {  // f <pointer> <segment> <const> [x:y ...]
    Decision d;
    Nat c = 0;
    if (!(in >> d.pointer >> d.choice.segment >> c)) throw std::invalid_argument("usage: f <pointer> <segment> <c> [x:y ...]");
    FunctionHandle f = FunctionHandle::constant(c);
    std::string upd;
    while (in >> upd) {
      const auto colon = upd.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("updates look like x:y");
      f = f.updated(std::stoull(upd.substr(0, colon)), std::stoull(upd.substr(colon + 1)));
    }
    d.choice.value = f;
    return d;
  }
  const std::size_t k = std::stoull(word);
  if (k >= legal.size()) throw std::invalid_argument("no listed move " + word);
  return legal[k];
}

// Classical game on the cut formula: the human takes ELO or ABE, a built-in
// strategy the other side.
int cmd_play(const PlayArgs& p) {
  const bool human_abe = p.as == "abe" || p.as == "A" || p.as == "a";
  if (!human_abe && !(p.as == "elo" || p.as == "B" || p.as == "b")) throw std::invalid_argument("--as takes abe or elo");
  Scenario s = p.s;
  s.classical = true;
  s.goal.clear();
  const Oracle oracle = s.oracle();
  const StrategyPtr machine = make_strategy(p.vs, oracle);
  const Formula formula = canonicalize(resolve_formula(s.cut, oracle));
  const Player human = human_abe ? Player::Abelard : Player::Eloise;
  const Perspective machine_view = direct_perspective(formula, opponent(human));
  (human_abe ? s.a : s.b) = "human";
  (human_abe ? s.b : s.a) = p.vs;

  GameState state(formula);
  std::cout << "you are " << (human_abe ? "ABE" : "ELO") << " against " << machine->name() << "\n"
            << "enter a listed number, 'm <ptr> <seg> <idx>', 'f <ptr> <seg> <c> [x:y ...]', 'pass' or 'quit'\n";
  std::string line;
  std::size_t played = 0;
  while (state.status() == Status::Running && played < p.budget) {
    const Nat n = state.stage();
    if (state.to_move() == human) {
      const std::vector<Decision> legal = legal_moves(state, 8);
      std::cout << "move " << n << ", view {" << join(state.view(), ", ") << "}\n";
      for (std::size_t i = 0; i < legal.size(); ++i)
        std::cout << "  " << i << ": @" << legal[i].pointer << " "
                  << choice_label(state.move(legal[i].pointer).node, legal[i].choice) << "\n";
      std::cout << "> " << std::flush;
      if (!std::getline(std::cin, line)) break;
      bool quit = false;
      try {
        auto d = read_decision(line, legal, quit);
        if (quit) break;
        if (!d) {
          state.pass();
          break;
        }
        if (auto bad = state.check(*d)) {
          std::cout << "illegal: " << *bad << "\n";
          continue;
        }
        state.play(*d);
      } catch (const std::exception& e) {
        std::cout << "? " << e.what() << "\n";
        continue;
      }
    } else {
      std::optional<Decision> d;
      {
        PlayerView v(state, machine_view);
        d = machine->decide(v);
      }
      if (!d) {
        std::cout << machine->name() << " passes\n";
        state.pass();
        break;
      }
      state.play(*d);
      std::cout << "move " << n << ": " << machine->name() << " plays "
                << choice_label(state.move(d->pointer).node, d->choice) << " @" << d->pointer << "\n";
    }
    ++played;
  }
  DebateOutcome o;
  o.steps = state.stage() - 1;
  o.reason = state.reason();
  if (state.status() == Status::Running) {
    std::cout << "stopped after " << o.steps << " moves\n";
    o.kind = OutcomeKind::Running;
  } else {
    o.kind = state.status() == Status::EloiseWins ? OutcomeKind::BWins : OutcomeKind::AWins;
    std::cout << (state.status() == Status::EloiseWins ? "ELO" : "ABE") << " wins: " << state.reason() << "\n";
  }
  DebateArena setup;
  setup.cut = formula;
  setup.arena = formula;
  setup.a = direct_perspective(formula, Player::Abelard);
  setup.b = direct_perspective(formula, Player::Eloise);
  DebateTrace t{setup, state, o, s.a, s.b, s};
  write_file(p.out, export_trace(t, ExportFormat::Json));
  std::cout << "trace written to " << p.out << "\n";
  return 0;
}

void scenario_options(CLI::App* app, Scenario& s) {
  app->add_option("--cut", s.cut, "example name or formula file")->required();
  app->add_option("--goal", s.goal, "goal example name or formula file");
  app->add_option("--f", s.f, "oracle function: identity, zero, succ, square-plus-3, ackermann-diag, 10,8,3,27");
  app->add_option("--P", s.p, "oracle predicate: eq:<function>");
  app->add_option("--a", s.a, "strategy for A")->required();
  app->add_option("--b", s.b, "strategy for B")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gamesem: debates over infinitary formulas"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "run a debate between two strategies");
  scenario_options(run_cmd, run.s);
  run_cmd->add_option("--budget", run.budget, "move budget (default GAMESEM_BUDGET or 10000)");
  run_cmd->add_option("--out", run.out, "write the trace to a file");
  run_cmd->add_option("--format", run.format, "json, dot or phi (default from the file extension)");
  run_cmd->add_flag("--no-lasso", run.no_lasso, "do not stop on a repeating play");
  run_cmd->add_flag("--classical", run.s.classical, "classical game on the cut: A plays ABE, B plays ELO");
  run_cmd->add_option("--periods", run.periods, "periods observed before a lasso is accepted");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "views, segments and the omega chain of a trace");
  an_cmd->add_option("--trace", an.trace, "JSON export or phi lines")->required();
  an_cmd->add_option("--at", an.at, "position to analyse (default: after the last move)");
  an_cmd->add_flag("--omega", an.omega, "find the omega chain of a lasso and assign blame");
  an_cmd->add_option("--choice", an.choice, "phi(ω) for the extension preview (a chain element)");
  an_cmd->add_option("--odd", an.odd, "mover at odd positions, for phi-line traces");
  an_cmd->add_option("--even", an.even, "mover at even positions, for phi-line traces");

  PlayArgs pl;
  auto* pl_cmd = app.add_subcommand("play", "play one side interactively");
  pl_cmd->add_option("--cut", pl.s.cut, "example name or formula file")->required();
  pl_cmd->add_option("--f", pl.s.f, "oracle function");
  pl_cmd->add_option("--P", pl.s.p, "oracle predicate");
  pl_cmd->add_option("--as", pl.as, "abe or elo");
  pl_cmd->add_option("--vs", pl.vs, "strategy for the other side")->required();
  pl_cmd->add_option("--out", pl.out, "trace file (default gamesem-play.json)");
  pl_cmd->add_option("--budget", pl.budget, "maximum number of moves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors share exit code 1
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*an_cmd) return cmd_analyze(an);
    if (*pl_cmd) return cmd_play(pl);
  } catch (const IllegalMove& e) {
    std::cerr << "illegal move by " << to_string(role_of(e.by())) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
