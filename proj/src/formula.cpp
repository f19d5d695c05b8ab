#include "gamesem/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gamesem {

struct Formula::Node {
  Connective conn = Connective::And;
  std::vector<Segment> segments;
  std::string label;
  std::string negated_label;
};

bool operator==(const Choice& a, const Choice& b) {
  return a.segment == b.segment && a.value == b.value;
}

std::string to_string(const Index& index) {
  if (const Nat* n = std::get_if<Nat>(&index)) return std::to_string(*n);
  return std::get<FunctionHandle>(index).describe();
}

std::string to_string(Validity3 v) {
  switch (v) {
    case Validity3::Valid: return "Valid";
    case Validity3::Invalid: return "Invalid";
    case Validity3::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Segment

Formula Segment::child(const Index& index) const {
  if (kind == IndexKind::Natural) {
    const Nat* n = std::get_if<Nat>(&index);
    if (!n) throw std::invalid_argument("natural family indexed by a function");
    if (count && *n >= *count) throw std::out_of_range("index " + std::to_string(*n) + " out of range");
    if (items) return (*items)[*n];
    return generate(index);
  }
  if (!std::holds_alternative<FunctionHandle>(index))
    throw std::invalid_argument("function family indexed by a natural");
  return generate(index);
}

Segment Segment::list(std::vector<Formula> items) {
  Segment s;
  s.kind = IndexKind::Natural;
  s.count = items.size();
  s.items = std::make_shared<const std::vector<Formula>>(std::move(items));
  return s;
}

Segment Segment::naturals(std::string binder, std::function<Formula(Nat)> gen,
                          std::optional<Nat> bound) {
  Segment s;
  s.kind = IndexKind::Natural;
  s.binder = std::move(binder);
  s.bound = bound;
  s.generate = [gen = std::move(gen)](const Index& i) { return gen(std::get<Nat>(i)); };
  return s;
}

Segment Segment::functions(std::string binder,
                           std::function<Formula(const FunctionHandle&)> gen) {
  Segment s;
  s.kind = IndexKind::Function;
  s.binder = std::move(binder);
  s.generate = [gen = std::move(gen)](const Index& i) {
    return gen(std::get<FunctionHandle>(i));
  };
  return s;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::leaf(bool value, std::string label, std::string negated_label) {
  auto n = std::make_shared<Node>();
  n->conn = value ? Connective::And : Connective::Or;
  if (!label.empty() && negated_label.empty()) negated_label = "not(" + label + ")";
  n->label = std::move(label);
  n->negated_label = std::move(negated_label);
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> children) {
  std::vector<Segment> segs;
  segs.push_back(Segment::list(std::move(children)));
  return node(Connective::And, std::move(segs));
}

Formula Formula::disj(std::vector<Formula> children) {
  std::vector<Segment> segs;
  segs.push_back(Segment::list(std::move(children)));
  return node(Connective::Or, std::move(segs));
}

Formula Formula::node(Connective c, std::vector<Segment> segments) {
  auto n = std::make_shared<Node>();
  n->conn = c;
  for (auto& s : segments)
    if (!(s.count && *s.count == 0)) n->segments.push_back(std::move(s));
  return Formula(std::move(n));
}

Connective Formula::connective() const { return node_->conn; }
bool Formula::is_leaf() const { return node_->segments.empty(); }

bool Formula::value() const {
  if (!is_leaf()) throw std::logic_error("value() of a non-leaf formula");
  return node_->conn == Connective::And;
}

const std::vector<Segment>& Formula::segments() const { return node_->segments; }
const std::string& Formula::label() const { return node_->label; }
const std::string& Formula::negated_label() const { return node_->negated_label; }

Formula Formula::child(const Choice& choice) const {
  if (choice.segment >= node_->segments.size())
    throw std::out_of_range("segment " + std::to_string(choice.segment) + " out of range");
  return node_->segments[choice.segment].child(choice.value);
}

bool Formula::is_finite() const {
  for (const auto& s : node_->segments) {
    if (!s.is_list()) return false;
    for (const auto& c : *s.items)
      if (!c.is_finite()) return false;
  }
  return true;
}

std::string Formula::head() const {
  if (is_leaf()) {
    if (!label().empty()) return label();
    return value() ? "1" : "0";
  }
  std::string out = connective() == Connective::And ? "and[" : "or[";
  for (std::size_t i = 0; i < segments().size(); ++i) {
    const auto& s = segments()[i];
    if (i) out += ",";
    if (s.is_list())
      out += std::to_string(*s.count);
    else
      out += s.binder.empty() ? "*" : s.binder;
  }
  return out + "]";
}

std::string choice_label(const Formula& parent, const Choice& choice) {
  const Segment& s = parent.segments().at(choice.segment);
  if (s.is_list()) {
    const Nat i = std::get<Nat>(choice.value);
    const Formula& item = s.items->at(i);
    if (item.is_leaf()) return item.head();
    for (const auto& inner : item.segments())
      if (!inner.binder.empty()) return "ask " + inner.binder;
    return "#" + std::to_string(i);
  }
  return (s.binder.empty() ? std::string("#") : s.binder) + "=" + to_string(choice.value);
}

std::vector<Formula> enumerate_segment(const Segment& s, std::size_t limit, bool& complete) {
  std::vector<Formula> out;
  complete = false;
  if (s.kind == IndexKind::Function) return out;
  Nat n = limit;
  if (s.count && *s.count <= limit) {
    n = *s.count;
    complete = true;
  }
  out.reserve(n);
  for (Nat i = 0; i < n; ++i) out.push_back(s.child(Index{i}));
  return out;
}

// ---------------------------------------------------------------------------
// negation and canonical form

Formula negate(const Formula& a) {
  if (a.is_leaf()) return Formula::leaf(!a.value(), a.negated_label(), a.label());
  std::vector<Segment> segs;
  for (const auto& s : a.segments()) {
    Segment n = s;
    if (s.is_list()) {
      std::vector<Formula> items;
      items.reserve(s.items->size());
      for (const auto& c : *s.items) items.push_back(negate(c));
      n.items = std::make_shared<const std::vector<Formula>>(std::move(items));
    } else {
      n.generate = [g = s.generate](const Index& i) { return negate(g(i)); };
      if (!s.source.empty())
        n.source = s.source[0] == '~' ? s.source.substr(1) : "~" + s.source;
    }
    segs.push_back(std::move(n));
  }
  return Formula::node(a.connective() == Connective::And ? Connective::Or : Connective::And,
                       std::move(segs));
}

namespace {

bool splices_into(const Formula& child, Connective parent) {
  return !child.is_leaf() && child.connective() == parent;
}

class Canonicalizer {
public:
  explicit Canonicalizer(const CanonicalizeOptions& o) : options_(o) {}

  Formula run(const Formula& a) {
    if (++used_ > options_.node_budget) throw BudgetExhausted("canonicalize: node budget exhausted");
    if (a.is_leaf()) return a;
    const Connective conn = a.connective();
    std::vector<Segment> out;
    std::vector<Formula> run_items;
    auto flush = [&] {
      if (!run_items.empty()) out.push_back(Segment::list(std::move(run_items)));
      run_items.clear();
    };
    for (const auto& s : a.segments()) {
      if (s.is_list()) {
        for (const auto& item : *s.items) {
          Formula c = run(item);
          if (splices_into(c, conn)) {
            flush();
            for (const auto& inner : c.segments()) out.push_back(inner);
          } else {
            run_items.push_back(std::move(c));
          }
        }
        continue;
      }
      flush();
      Segment g = s;
      const CanonicalizeOptions lazy = options_;
      g.generate = [gen = s.generate, conn, lazy](const Index& i) {
        Canonicalizer inner(lazy);
        Formula c = inner.run(gen(i));
        if (splices_into(c, conn))
          throw std::logic_error("generated child has the parent's connective; cannot flatten lazily");
        return c;
      };
      if (s.kind == IndexKind::Natural) {
        Nat probe = s.bound.value_or(options_.probe);
        if (s.count) probe = std::min<Nat>(probe, *s.count);
        for (Nat i = 0; i < probe; ++i) {
          Formula c = run(s.generate(Index{i}));
          if (splices_into(c, conn))
            throw std::invalid_argument("cannot flatten a generator family whose children share the parent's connective");
        }
      }
      out.push_back(std::move(g));
    }
    flush();
    return Formula::node(conn, std::move(out));
  }

private:
  CanonicalizeOptions options_;
  std::size_t used_ = 0;
};

}  // namespace

Formula canonicalize(const Formula& a, const CanonicalizeOptions& options) {
  Canonicalizer c(options);
  return c.run(a);
}

// ---------------------------------------------------------------------------
// evaluation

bool eval_finite(const Formula& a) {
  if (a.is_leaf()) return a.value();
  const bool is_and = a.connective() == Connective::And;
  for (const auto& s : a.segments()) {
    if (s.kind == IndexKind::Function)
      throw std::invalid_argument("eval_finite: function-indexed family");
    Nat n = 0;
    if (s.count)
      n = *s.count;
    else if (s.bound)
      n = *s.bound;
    else
      throw std::invalid_argument("eval_finite: unbounded generator family");
    for (Nat i = 0; i < n; ++i) {
      const bool v = eval_finite(s.child(Index{i}));
      if (is_and && !v) return false;
      if (!is_and && v) return true;
    }
  }
  return is_and;
}

namespace {

// Children that a budgeted check may look at; `complete` reports whether they
// are all of them.
std::vector<Formula> checkable_children(const Formula& a, bool& complete) {
  std::vector<Formula> out;
  complete = true;
  for (const auto& s : a.segments()) {
    bool seg_complete = false;
    std::size_t limit = s.count ? *s.count : s.bound.value_or(0);
    auto part = enumerate_segment(s, limit, seg_complete);
    complete = complete && seg_complete;
    for (auto& c : part) out.push_back(std::move(c));
  }
  return out;
}

struct Ticker {
  std::size_t budget;
  std::size_t used = 0;
  bool tick() { return ++used <= budget; }
};

Validity3 intuitionistic(const Formula& a, Ticker& t) {
  if (!t.tick()) return Validity3::Unknown;
  if (a.is_leaf()) return a.value() ? Validity3::Valid : Validity3::Invalid;
  bool complete = false;
  auto children = checkable_children(a, complete);
  bool all_decided = complete;
  if (a.connective() == Connective::And) {
    for (const auto& c : children) {
      Validity3 v = intuitionistic(c, t);
      if (v == Validity3::Invalid) return Validity3::Invalid;
      if (v == Validity3::Unknown) all_decided = false;
    }
    return all_decided ? Validity3::Valid : Validity3::Unknown;
  }
  for (const auto& c : children) {
    Validity3 v = intuitionistic(c, t);
    if (v == Validity3::Valid) return Validity3::Valid;
    if (v == Validity3::Unknown) all_decided = false;
  }
  return all_decided ? Validity3::Invalid : Validity3::Unknown;
}

// Membership in the classical set. A disjunction is tracked as the set of its
// disjuncts; the backtracking clause replaces D by D plus the (flattened)
// answer to one of its conjunctions. Sets only grow, so the recursion is
// well founded on finite formulas and every result can be memoized.
class ClassicalChecker {
public:
  explicit ClassicalChecker(std::size_t budget) : ticker_{budget} {}

  Validity3 formula(const Formula& a) {
    if (a.is_leaf()) return a.value() ? Validity3::Valid : Validity3::Invalid;
    bool complete = false;
    auto children = checkable_children(a, complete);
    if (a.connective() == Connective::Or) return disjunction(std::move(children), complete);
    bool all_decided = complete;
    for (const auto& c : children) {
      Validity3 v = c.is_leaf() || c.connective() == Connective::Or ? formula(c)
                                                                    : disjunction({c}, true);
      if (v == Validity3::Invalid) return Validity3::Invalid;
      if (v == Validity3::Unknown) all_decided = false;
    }
    return all_decided ? Validity3::Valid : Validity3::Unknown;
  }

private:
  using Key = std::pair<std::vector<const void*>, bool>;

  Key key_of(std::vector<Formula>& d, bool complete) {
    std::sort(d.begin(), d.end(), [](const Formula& x, const Formula& y) { return x.id() < y.id(); });
    d.erase(std::unique(d.begin(), d.end(),
                        [](const Formula& x, const Formula& y) { return x.id() == y.id(); }),
            d.end());
    Key k{{}, complete};
    for (const auto& f : d) {
      k.first.push_back(f.id());
      alive_.push_back(f);
    }
    return k;
  }

  Validity3 disjunction(std::vector<Formula> d, bool complete) {
    const Key key = key_of(d, complete);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!ticker_.tick()) return Validity3::Unknown;

    Validity3 result = complete ? Validity3::Invalid : Validity3::Unknown;
    for (const auto& c : d)
      if (c.is_leaf() && c.value()) result = Validity3::Valid;

    for (std::size_t ci = 0; ci < d.size() && result != Validity3::Valid; ++ci) {
      const Formula& c = d[ci];
      if (c.is_leaf() || c.connective() != Connective::And) continue;
      bool answers_complete = false;
      auto answers = checkable_children(c, answers_complete);
      bool refuted = false;
      bool all_valid = answers_complete;
      for (const auto& cj : answers) {
        std::vector<Formula> next = d;
        bool next_complete = complete;
        if (cj.is_leaf()) {
          if (cj.value()) next.push_back(cj);
        } else if (cj.connective() == Connective::Or) {
          bool inner_complete = false;
          for (auto& x : checkable_children(cj, inner_complete)) next.push_back(std::move(x));
          next_complete = next_complete && inner_complete;
        } else {
          next.push_back(cj);
        }
        Key nk = key_of(next, next_complete);
        Validity3 v = nk.first == key.first ? Validity3::Invalid : disjunction(next, next_complete);
        if (v == Validity3::Invalid) {
          refuted = true;
          break;
        }
        if (v == Validity3::Unknown) all_valid = false;
      }
      if (!refuted && all_valid) result = Validity3::Valid;
      else if (!refuted) result = Validity3::Unknown;
    }
    memo_[key] = result;
    return result;
  }

  Ticker ticker_;
  std::map<Key, Validity3> memo_;
  std::vector<Formula> alive_;  // keeps node ids stable while they are keys
};

}  // namespace

Validity3 is_intuitionistically_valid(const Formula& a, std::size_t budget) {
  Ticker t{budget};
  return intuitionistic(a, t);
}

Validity3 is_classically_valid(const Formula& a, std::size_t budget) {
  Formula c = a;
  try {
    CanonicalizeOptions o;
    o.node_budget = budget;
    c = canonicalize(a, o);
  } catch (const BudgetExhausted&) {
    return Validity3::Unknown;
  } catch (const std::invalid_argument&) {
    return Validity3::Unknown;
  }
  ClassicalChecker checker(budget);
  return checker.formula(c);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::optional<Formula>> comparable_children(const Formula& a, std::size_t probe) {
  std::vector<std::optional<Formula>> out;
  for (const auto& s : a.segments()) {
    if (s.kind == IndexKind::Function) {
      for (Nat c = 0; c < 2; ++c) out.push_back(s.child(Index{FunctionHandle::constant(c)}));
      out.push_back(std::nullopt);  // marks an infinite family
      continue;
    }
    bool complete = false;
    const std::size_t limit = s.count ? *s.count : std::min<std::size_t>(probe, s.bound.value_or(probe));
    for (auto& c : enumerate_segment(s, limit, complete)) out.push_back(std::move(c));
    if (!s.count) out.push_back(std::nullopt);
  }
  return out;
}

}  // namespace

bool structurally_equal(const Formula& a, const Formula& b, std::size_t probe) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.value() == b.value() && a.label() == b.label();
  if (a.connective() != b.connective()) return false;
  auto ca = comparable_children(a, probe);
  auto cb = comparable_children(b, probe);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].has_value() != cb[i].has_value()) return false;
    if (ca[i] && !structurally_equal(*ca[i], *cb[i], probe)) return false;
  }
  return true;
}

}  // namespace gamesem
