// Interaction sequences: a pointer map phi on positions with phi(n) < n and
// phi(n) in V(n), where V(1) = {0}, V(n+1) = {n} ∪ V(phi(n)) and V(0) = ∅.
//
// Finite sequences store phi(1..k). Infinite debates are stored as lassos: a
// finite template plus a period L. Positions from s0 = max(cycle_start, 1) on
// repeat the template slots [s0, s0+L); a slot pointer below cycle_start is
// fixed, any other pointer moves forward by L each round.

#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamesem/function_handle.hpp"

namespace gamesem {

inline constexpr Nat kDefaultLimitRounds = 3;

// Ordinal positions below omega * K: (limit_round, offset).
struct Position {
  Nat limit_round = 0;
  Nat offset = 0;

  static Position finite(Nat n) { return {0, n}; }
  static Position omega(Nat offset = 0) { return {1, offset}; }
  bool is_finite() const { return limit_round == 0; }

  auto operator<=>(const Position&) const = default;
  bool operator==(const Position&) const = default;
};

// "5", "ω", "ω+2", "ω·2+1"
std::string to_string(const Position& p);

// S(k) = [phi(k), k]; S(0) = [0, 0].
struct Span {
  Nat left = 0;
  Nat right = 0;
  Nat owner = 0;
  bool operator==(const Span&) const = default;
};

std::string to_string(const Span& s);  // "[1,6]"

struct Lasso {
  Nat cycle_start = 0;
  Nat cycle_len = 1;
  Nat shift = 1;
  bool operator==(const Lasso&) const = default;
};

class InvalidSequence : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InteractionSeq {
public:
  InteractionSeq() = default;

  // phi[i] is phi(i+1).
  static InteractionSeq finite(std::vector<Nat> phi);

  // `phi` must cover positions 1 .. s0+L-1. Throws InvalidSequence when the
  // shape is malformed (shift != cycle_len, template too short, phi(n) >= n).
  static InteractionSeq lasso(std::vector<Nat> phi, Lasso shape);

  bool is_lasso() const { return shape_.has_value(); }
  const std::optional<Lasso>& shape() const { return shape_; }

  // Last represented position (number of pointers); for lassos, the template end.
  Nat size() const { return phi_.size() - 1; }

  bool represents(Nat n) const { return is_lasso() || n <= size(); }

  // phi(n) for n >= 1; lassos answer for every n.
  Nat phi(Nat n) const;

  // First slot of the cycle, max(cycle_start, 1).
  Nat slot_begin() const;

  // Finite sequence with positions 1..n.
  InteractionSeq unroll(Nat n) const;

  // Template pointers phi(1..size()).
  std::vector<Nat> pointers() const { return {phi_.begin() + 1, phi_.end()}; }

  bool operator==(const InteractionSeq&) const = default;

private:
  std::vector<Nat> phi_{0};
  std::optional<Lasso> shape_;
};

struct Validation {
  bool ok = true;
  std::optional<Nat> position;  // first offending n
  std::string reason;
};

// Lassos are checked over the template plus two unrolled rounds.
Validation validate(const InteractionSeq& seq);

// V(n), largest first. Requires n <= size()+1 for finite sequences.
std::vector<Nat> view(const InteractionSeq& seq, Nat n);

// m_0 = n-1, m_{k+1} = phi(m_k) - 1; segments S(m_k), largest first.
std::vector<Span> segments_partition(const InteractionSeq& seq, Nat n);

struct DefiniteSegments {
  std::vector<Span> segments;
  bool provisional = true;  // false when decided from a lasso's cycle
};

// S(k) for 0 < k < n with k outside the image of phi. A finite sequence is
// judged on phi(1..n-1) only; a lasso on the whole infinite sequence.
DefiniteSegments definite_segments(const InteractionSeq& seq, Nat n);

struct NestResult {
  bool ok = true;
  std::optional<std::pair<Span, Span>> violation;
};

// Every two segments are disjoint, or one lies inside the other with a
// strictly smaller right endpoint and a left endpoint that is not smaller.
NestResult nest_check(std::vector<Span> segments);

// A chain n_0 < n_1 < ... given by a finite head followed by a cycle that
// repeats shifted by `shift` each period.
struct Chain {
  std::vector<Nat> head;
  std::vector<Nat> cycle;
  Nat shift = 0;
  bool starts_at_zero = true;  // S(0) opens the partition; otherwise phi(n_0) = 0

  Nat at(std::size_t i) const;
  std::vector<Nat> take(std::size_t count) const;
  bool contains(Nat n) const;
  std::string to_string() const;  // head, two periods, then "+shift...": "0,2,6,10,+4..."
  bool operator==(const Chain&) const = default;
};

class NoChain : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class AmbiguousChain : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class NonAlternating : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The unique infinite chain with phi(n_{k+1}) = n_k + 1, started either at 0
// or at some n_0 with phi(n_0) = 0. Requires a valid lasso.
Chain omega_chain(const InteractionSeq& seq);

struct Blame {
  Chain chain;
  Nat chain_parity = 0;  // 0: even, 1: odd
  std::string blamed;
};

// The blamed player is the one moving at positions of the other parity, that
// is, the one who answers the chain's moves.
Blame blame(const InteractionSeq& seq, const std::string& odd_mover,
            const std::string& even_mover);

// V(n) for a position that may lie past omega: finite members plus,
// when `chain` is set, all members of the omega-chain.
struct ViewSet {
  std::vector<Position> positions;  // largest first
  std::optional<Chain> chain;

  bool contains(const Position& p) const;
  std::string to_string() const;  // "{ω, 1, 0}"
};

// A lasso closed at omega with phi(omega) = n_k, followed by finitely many
// moves omega+1, omega+2, ...
class TransfiniteSeq {
public:
  const InteractionSeq& base() const { return base_; }
  const Chain& chain() const { return chain_; }
  Nat phi_omega() const { return phi_omega_; }
  const std::vector<Position>& tail() const { return tail_; }  // phi(omega+1), ...

  Position phi(const Position& p) const;
  ViewSet view(const Position& p) const;

  // Appends omega+j with the given pointer; throws InvalidSequence if the
  // pointer is not in the view.
  void append(const Position& target);

  Nat limit_rounds() const { return 1; }

private:
  friend TransfiniteSeq extend_transfinite(const InteractionSeq&, Nat, Nat);
  InteractionSeq base_;
  Chain chain_;
  Nat phi_omega_ = 0;
  std::vector<Position> tail_;
};

// Throws InvalidSequence when `choice` is not an element of the omega-chain,
// or when `max_limit_rounds` is 0.
TransfiniteSeq extend_transfinite(const InteractionSeq& seq, Nat choice,
                                  Nat max_limit_rounds = kDefaultLimitRounds);

Validation validate(const TransfiniteSeq& seq);

struct FoundChain {
  std::vector<Nat> elements;
  Nat covers = 0;  // the segments partition [0, covers)
};

// All maximal chains inside positions [0, n), each seeded at 0 or at some s
// with phi(s) = 0. Stops with BudgetExhausted-like std::runtime_error once
// more than `limit` chains are found.
std::vector<FoundChain> brute_force_chains(const InteractionSeq& seq, Nat n,
                                           std::size_t limit = 100'000);

// "n: phi" lines; lassos add "cycle_start", "cycle_len" and "shift" headers.
void write_phi_lines(std::ostream& out, const InteractionSeq& seq);
InteractionSeq read_phi_lines(std::istream& in);

}  // namespace gamesem
