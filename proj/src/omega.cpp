// Cycle analysis of lassos. A position m >= s0 sits at slot s0 + (m-s0) % L.
// Every cycle position at slot s has the same shape of successor tree up to a
// translation, so "m has an infinite chain above it" only depends on its slot:
// it holds iff the slot reaches a cycle of the slot graph, where s -> t when a
// moving pointer at t lands on s+1 in some round.

#include "gamesem/pointer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace gamesem {

Nat Chain::at(std::size_t i) const {
  if (i < head.size()) return head[i];
  if (cycle.empty()) throw std::out_of_range("finite chain");
  i -= head.size();
  return cycle[i % cycle.size()] + static_cast<Nat>(i / cycle.size()) * shift;
}

std::vector<Nat> Chain::take(std::size_t count) const {
  std::vector<Nat> out;
  const std::size_t n = cycle.empty() ? std::min(count, head.size()) : count;
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

bool Chain::contains(Nat n) const {
  if (std::find(head.begin(), head.end(), n) != head.end()) return true;
  for (Nat c : cycle)
    if (n >= c && shift > 0 && (n - c) % shift == 0) return true;
  return false;
}

std::string Chain::to_string() const {
  std::ostringstream out;
  const auto shown = take(head.size() + 2 * cycle.size());
  for (std::size_t i = 0; i < shown.size(); ++i) out << (i ? "," : "") << shown[i];
  if (!cycle.empty()) out << ",+" << shift << "...";
  return out.str();
}

namespace {

struct Analysis {
  const InteractionSeq& seq;
  Nat P, L, s0, end;
  std::vector<std::vector<Nat>> slot_succ;  // indexed by slot - s0
  std::vector<bool> alive;

  explicit Analysis(const InteractionSeq& s) : seq(s) {
    if (!s.is_lasso()) throw std::invalid_argument("omega_chain needs a lasso");
    const auto v = validate(s);
    if (!v.ok) throw InvalidSequence("invalid lasso: " + v.reason);
    P = s.shape()->cycle_start;
    L = s.shape()->cycle_len;
    s0 = s.slot_begin();
    end = s0 + L;
    slot_succ.resize(L);
    for (Nat a = s0; a < end; ++a)
      for (Nat t = s0; t < end; ++t) {
        const Nat p = s.phi(t);
        if (p >= P && a + 1 >= p && (a + 1 - p) % L == 0) slot_succ[a - s0].push_back(t);
      }
    // Prune slots without successors until only slots with an infinite path remain.
    alive.assign(L, true);
    for (bool changed = true; changed;) {
      changed = false;
      for (Nat i = 0; i < L; ++i) {
        if (!alive[i]) continue;
        const bool any = std::any_of(slot_succ[i].begin(), slot_succ[i].end(),
                                     [&](Nat t) { return alive[t - s0]; });
        if (!any) alive[i] = false, changed = true;
      }
    }
  }

  Nat slot(Nat m) const { return s0 + (m - s0) % L; }

  std::vector<Nat> alive_succ(Nat a) const {
    std::vector<Nat> out;
    for (Nat t : slot_succ[a - s0])
      if (alive[t - s0]) out.push_back(t);
    return out;
  }

  // 0, 1 or 2 (meaning "two or more") infinite chains through slot a.
  int count_from_slot(Nat a) const {
    if (!alive[a - s0]) return 0;
    std::vector<bool> seen(L, false);
    std::vector<Nat> stack{a};
    while (!stack.empty()) {
      const Nat x = stack.back();
      stack.pop_back();
      if (seen[x - s0]) continue;
      seen[x - s0] = true;
      const auto next = alive_succ(x);
      if (next.size() != 1) return 2;
      stack.push_back(next[0]);
    }
    return 1;
  }

  struct Child {
    Nat position;
    bool family = false;  // position + rL for every round r
  };

  // Positions m with phi(m) = v.
  std::vector<Child> pointing_at(Nat v) const {
    std::vector<Child> out;
    for (Nat m = v + 1; m < s0; ++m)
      if (seq.phi(m) == v) out.push_back({m});
    for (Nat t = s0; t < end; ++t) {
      const Nat p = seq.phi(t);
      if (p < P) {
        if (p == v) out.push_back({t, true});
      } else if (v >= p && (v - p) % L == 0) {
        out.push_back({t + (v - p)});
      }
    }
    return out;
  }

  int count(Nat m, std::map<Nat, int>& memo) const {
    if (m >= s0) return count_from_slot(slot(m));
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    int total = 0;
    for (const Child& c : pointing_at(m + 1)) {
      const int k = count(c.position, memo);
      total += c.family && k > 0 ? 2 : k;
    }
    return memo[m] = std::min(total, 2);
  }
};

}  // namespace

Chain omega_chain(const InteractionSeq& seq) {
  const Analysis a(seq);
  std::map<Nat, int> memo;

  std::vector<std::pair<Nat, bool>> seeds{{0, true}};
  int total = a.count(0, memo);
  for (const auto& c : a.pointing_at(0)) {
    const int k = a.count(c.position, memo);
    total += c.family && k > 0 ? 2 : k;
    if (k > 0) seeds.push_back({c.position, false});
  }
  if (total == 0) throw NoChain("no infinite chain in the lasso");
  if (total > 1) throw AmbiguousChain("more than one infinite chain in the lasso");

  Chain chain;
  auto seed = std::find_if(seeds.begin(), seeds.end(),
                           [&](const auto& s) { return a.count(s.first, memo) == 1; });
  chain.starts_at_zero = seed->second;
  std::vector<Nat> path{seed->first};
  std::map<Nat, std::size_t> slot_index;
  Nat m = seed->first;
  if (m >= a.s0) slot_index[a.slot(m)] = 0;
  while (true) {
    Nat next = 0;
    if (m < a.s0) {
      for (const auto& c : a.pointing_at(m + 1))
        if (a.count(c.position, memo) == 1) next = c.position;
    } else {
      const Nat t = a.alive_succ(a.slot(m)).front();
      next = m + t - seq.phi(t) + 1;
    }
    if (next >= a.s0) {
      const Nat t = a.slot(next);
      if (auto it = slot_index.find(t); it != slot_index.end()) {
        chain.head.assign(path.begin(), path.begin() + it->second);
        chain.cycle.assign(path.begin() + it->second, path.end());
        chain.shift = next - path[it->second];
        return chain;
      }
      slot_index[t] = path.size();
    }
    path.push_back(next);
    m = next;
  }
}

Blame blame(const InteractionSeq& seq, const std::string& odd_mover,
            const std::string& even_mover) {
  Blame out{omega_chain(seq), 0, {}};
  const Chain& c = out.chain;
  const Nat parity = c.at(0) % 2;
  bool same = c.shift % 2 == 0;
  for (Nat n : c.head) same = same && n % 2 == parity;
  for (Nat n : c.cycle) same = same && n % 2 == parity;
  if (!same) throw NonAlternating("omega-chain " + c.to_string() + " mixes parities");
  out.chain_parity = parity;
  out.blamed = parity == 0 ? odd_mover : even_mover;
  return out;
}

bool ViewSet::contains(const Position& p) const {
  if (std::find(positions.begin(), positions.end(), p) != positions.end()) return true;
  return chain && p.is_finite() && chain->contains(p.offset);
}

std::string ViewSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < positions.size(); ++i)
    out += (i ? ", " : "") + gamesem::to_string(positions[i]);
  if (chain) out += std::string(positions.empty() ? "" : ", ") + chain->to_string();
  return out + "}";
}

Position TransfiniteSeq::phi(const Position& p) const {
  if (p.is_finite()) return Position::finite(base_.phi(p.offset));
  if (p.limit_round != 1 || p.offset > tail_.size())
    throw std::out_of_range("position " + gamesem::to_string(p) + " not represented");
  if (p.offset == 0) return Position::finite(phi_omega_);
  return tail_[p.offset - 1];
}

ViewSet TransfiniteSeq::view(const Position& p) const {
  ViewSet out;
  if (p.is_finite()) {
    for (Nat m : gamesem::view(base_, p.offset)) out.positions.push_back(Position::finite(m));
    return out;
  }
  if (p.limit_round != 1 || p.offset > tail_.size() + 1)
    throw std::out_of_range("position " + gamesem::to_string(p) + " not represented");
  if (p.offset == 0) {
    out.chain = chain_;
    return out;
  }
  // V(x+1) = {x} ∪ V(phi(x))
  const Position prev = Position::omega(p.offset - 1);
  ViewSet rest = view(phi(prev));
  out.positions.push_back(prev);
  out.positions.insert(out.positions.end(), rest.positions.begin(), rest.positions.end());
  out.chain = rest.chain;
  return out;
}

void TransfiniteSeq::append(const Position& target) {
  const Position here = Position::omega(tail_.size() + 1);
  if (!view(here).contains(target))
    throw InvalidSequence("phi(" + gamesem::to_string(here) + ") = " + gamesem::to_string(target) +
                          " is not in the view");
  tail_.push_back(target);
}

TransfiniteSeq extend_transfinite(const InteractionSeq& seq, Nat choice, Nat max_limit_rounds) {
  if (max_limit_rounds == 0) throw InvalidSequence("no limit rounds allowed");
  TransfiniteSeq out;
  out.base_ = seq;
  out.chain_ = omega_chain(seq);
  if (!out.chain_.contains(choice))
    throw InvalidSequence("phi(ω) = " + std::to_string(choice) + " is not in the ω-chain " +
                          out.chain_.to_string());
  out.phi_omega_ = choice;
  return out;
}

Validation validate(const TransfiniteSeq& seq) {
  Validation v = validate(seq.base());
  if (!v.ok) return v;
  if (!seq.chain().contains(seq.phi_omega()))
    return {false, std::nullopt, "phi(ω) is not in the ω-chain"};
  for (std::size_t j = 0; j < seq.tail().size(); ++j) {
    const Position here = Position::omega(j + 1);
    const Position target = seq.tail()[j];
    if (!(target < here) || !seq.view(here).contains(target))
      return {false, std::nullopt, "phi(" + to_string(here) + ") = " + to_string(target) + " is not in the view"};
  }
  return {};
}

std::vector<FoundChain> brute_force_chains(const InteractionSeq& seq, Nat n, std::size_t limit) {
  if (!seq.is_lasso() && n > seq.size() + 1)
    throw std::out_of_range("brute_force_chains beyond the represented sequence");
  // by_target[v] = positions m < n with phi(m) = v
  std::vector<std::vector<Nat>> by_target(n + 1);
  for (Nat m = 1; m < n; ++m) by_target[seq.phi(m)].push_back(m);

  std::vector<FoundChain> out;
  std::vector<Nat> path;
  std::function<void(Nat)> grow = [&](Nat x) {
    path.push_back(x);
    const auto& next = x + 1 <= n ? by_target[x + 1] : std::vector<Nat>{};
    if (next.empty()) {
      if (out.size() >= limit) throw std::runtime_error("brute_force_chains: chain limit reached");
      out.push_back({path, x + 1});
    }
    for (Nat m : next) grow(m);
    path.pop_back();
  };
  if (n > 0) grow(0);
  for (Nat s : by_target[0]) grow(s);
  return out;
}

}  // namespace gamesem
