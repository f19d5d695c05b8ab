#include "gamesem/examples.hpp"

#include <limits>
#include <sstream>
#include <vector>

namespace gamesem {

namespace {

std::string str(Nat n) { return std::to_string(n); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

NatFunction parse_function(const std::string& spec) {
  if (spec == "identity") return {spec, [](Nat x) { return x; }};
  if (spec == "zero") return {spec, [](Nat) { return Nat{0}; }};
  if (spec == "succ") return {spec, [](Nat x) { return x + 1; }};
  if (spec == "square-plus-3") return {spec, [](Nat x) { return x * x + 3; }};
  if (spec == "ackermann-diag") return ackermann_diagonal();

  std::vector<Nat> values;
  std::optional<Nat> fallback;
  for (const auto& part : split(spec, ',')) {
    if (part.empty()) continue;
    try {
      if (part.rfind("default=", 0) == 0)
        fallback = std::stoull(part.substr(8));
      else
        values.push_back(std::stoull(part));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad function spec '" + spec + "'");
    }
  }
  if (values.empty() && !fallback) throw std::invalid_argument("empty function spec");
  const Nat dflt = fallback ? *fallback : values.back();
  std::string name = spec;
  if (!fallback) name += ",default=" + str(dflt);
  return {name, [values, dflt](Nat x) { return x < values.size() ? values[x] : dflt; }};
}

NatPredicate parse_predicate(const std::string& spec) {
  if (spec.rfind("eq:", 0) == 0) {
    NatFunction h = parse_function(spec.substr(3));
    return {"eq:" + h.name, [h](Nat x, Nat y) { return y == h(x); }};
  }
  throw std::invalid_argument("bad predicate spec '" + spec + "'");
}

std::optional<boost::multiprecision::cpp_int> ackermann(Nat m, Nat n, std::size_t step_budget) {
  using boost::multiprecision::cpp_int;
  // A(m, n): the stack holds pending first arguments, `value` the current n.
  std::vector<cpp_int> stack{cpp_int(m)};
  cpp_int value = n;
  std::size_t steps = 0;
  while (!stack.empty()) {
    if (++steps > step_budget) return std::nullopt;
    cpp_int top = stack.back();
    stack.pop_back();
    if (top == 0) {
      value += 1;
    } else if (value == 0) {
      stack.push_back(top - 1);
      value = 1;
    } else {
      stack.push_back(top - 1);
      stack.push_back(top);
      value -= 1;
    }
  }
  return value;
}

NatFunction ackermann_diagonal(std::size_t step_budget) {
  return {"ackermann-diag", [step_budget](Nat x) {
            // A(4,4) >= A(4,2) = 2^65536 - 3, and the diagonal is increasing,
            // so from 4 on the value saturates without running the recursion.
            if (x >= 4) return std::numeric_limits<Nat>::max();
            auto v = ackermann(x, x, step_budget);
            if (!v) throw BudgetExhausted("ackermann(" + str(x) + ", " + str(x) + "): recursion budget exhausted");
            if (*v > std::numeric_limits<Nat>::max()) return std::numeric_limits<Nat>::max();
            return static_cast<Nat>(*v);
          }};
}

Formula minimum_formula(const NatFunction& f) {
  return Formula::node(
      Connective::Or, {Segment::naturals("n", [f](Nat n) {
        return Formula::node(Connective::And, {Segment::naturals("m", [f, n](Nat m) {
                               return Formula::leaf(f(n) <= f(m), "f(" + str(n) + ") <= f(" + str(m) + ")",
                                                    "f(" + str(n) + ") > f(" + str(m) + ")");
                             })});
      })});
}

Formula ascent_formula(const NatFunction& f) {
  return Formula::node(Connective::Or, {Segment::naturals("u", [f](Nat u) {
                         return Formula::leaf(f(u) <= f(u + 1), "f(" + str(u) + ") <= f(" + str(u + 1) + ")",
                                              "f(" + str(u) + ") > f(" + str(u + 1) + ")");
                       })});
}

Formula epsilon_goal_formula(const NatFunction& f) {
  return canonicalize(Formula::disj({negate(minimum_formula(f)), ascent_formula(f)}));
}

Formula choice_formula(const NatPredicate& p) {
  auto pl = [](Nat x, Nat y) { return "P(" + str(x) + "," + str(y) + ")"; };
  Segment by_function = Segment::functions("f", [p, pl](const FunctionHandle& f) {
    return Formula::node(Connective::And, {Segment::naturals("x", [p, pl, f](Nat x) {
                           const Nat y = f.peek(x);
                           return Formula::leaf(p(x, y), pl(x, y), "not " + pl(x, y));
                         })});
  });
  Segment by_point = Segment::naturals("x", [p, pl](Nat x) {
    return Formula::node(Connective::And, {Segment::naturals("y", [p, pl, x](Nat y) {
                           return Formula::leaf(!p(x, y), "not " + pl(x, y), pl(x, y));
                         })});
  });
  return Formula::node(Connective::Or, {std::move(by_function), std::move(by_point)});
}

Formula star_formula() {
  return Formula::node(Connective::Or, {Segment::functions("f", [](const FunctionHandle& f) {
    return Formula::node(Connective::And, {Segment::naturals("x", [f](Nat x) {
      return Formula::node(Connective::Or, {Segment::naturals("y", [f, x](Nat y) {
        const bool v = f.peek(x) == 0 && f.peek(y) != 0;
        return Formula::leaf(v, "f(" + str(x) + ")=0 & f(" + str(y) + ")!=0",
                             "f(" + str(x) + ")!=0 | f(" + str(y) + ")=0");
      })});
    })});
  })});
}

Formula ackermann_bound_formula(const NatFunction& f) {
  return Formula::node(
      Connective::Or, {Segment::naturals("x", [f](Nat x) {
        return Formula::node(Connective::And, {Segment::naturals("y", [f, x](Nat y) {
                               return Formula::leaf(y <= f(x), str(y) + " <= f(" + str(x) + ")",
                                                    str(y) + " > f(" + str(x) + ")");
                             })});
      })});
}

Formula build_example(const std::string& name, const Oracle& oracle) {
  auto need_f = [&]() -> const NatFunction& {
    if (!oracle.f) throw std::invalid_argument("example '" + name + "' needs a function oracle");
    return *oracle.f;
  };
  if (name == "minimum") return minimum_formula(need_f());
  if (name == "ascent") return ascent_formula(need_f());
  if (name == "epsilon-goal") return epsilon_goal_formula(need_f());
  if (name == "ackermann-bound") return ackermann_bound_formula(need_f());
  if (name == "star") return star_formula();
  if (name == "star-negation") return negate(star_formula());
  if (name == "choice") {
    if (!oracle.p) throw std::invalid_argument("example 'choice' needs a predicate oracle");
    return choice_formula(*oracle.p);
  }
  throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace gamesem
