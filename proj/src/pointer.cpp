#include "gamesem/pointer.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace gamesem {

std::string to_string(const Position& p) {
  if (p.limit_round == 0) return std::to_string(p.offset);
  std::string out = "ω";
  if (p.limit_round > 1) out += "·" + std::to_string(p.limit_round);
  if (p.offset > 0) out += "+" + std::to_string(p.offset);
  return out;
}

std::string to_string(const Span& s) {
  return "[" + std::to_string(s.left) + "," + std::to_string(s.right) + "]";
}

InteractionSeq InteractionSeq::finite(std::vector<Nat> phi) {
  InteractionSeq out;
  out.phi_.insert(out.phi_.end(), phi.begin(), phi.end());
  return out;
}

InteractionSeq InteractionSeq::lasso(std::vector<Nat> phi, Lasso shape) {
  if (shape.cycle_len == 0) throw InvalidSequence("lasso cycle_len must be positive");
  if (shape.shift != shape.cycle_len)
    throw InvalidSequence("lasso shift must equal cycle_len");
  const Nat s0 = std::max<Nat>(shape.cycle_start, 1);
  const Nat end = s0 + shape.cycle_len;  // exclusive
  if (phi.size() < end - 1)
    throw InvalidSequence("lasso template must cover positions 1.." + std::to_string(end - 1));
  InteractionSeq out;
  out.phi_.insert(out.phi_.end(), phi.begin(), phi.begin() + (end - 1));
  for (Nat n = 1; n < end; ++n)
    if (out.phi_[n] >= n)
      throw InvalidSequence("phi(" + std::to_string(n) + ") >= " + std::to_string(n));
  out.shape_ = shape;
  // Entries past the template must agree with the unrolled pattern.
  for (Nat n = end; n <= phi.size(); ++n)
    if (out.phi(n) != phi[n - 1])
      throw InvalidSequence("phi(" + std::to_string(n) + ") does not follow the cycle");
  return out;
}

Nat InteractionSeq::slot_begin() const {
  return shape_ ? std::max<Nat>(shape_->cycle_start, 1) : size() + 1;
}

Nat InteractionSeq::phi(Nat n) const {
  if (n == 0) throw std::out_of_range("phi(0) is undefined");
  if (!shape_) {
    if (n > size()) throw std::out_of_range("position " + std::to_string(n) + " not represented");
    return phi_[n];
  }
  const Nat s0 = slot_begin();
  if (n < s0 + shape_->cycle_len) return phi_[n];
  const Nat L = shape_->cycle_len;
  const Nat t = s0 + (n - s0) % L;
  const Nat r = (n - s0) / L;
  const Nat p = phi_[t];
  return p < shape_->cycle_start ? p : p + r * shape_->shift;
}

InteractionSeq InteractionSeq::unroll(Nat n) const {
  std::vector<Nat> out;
  out.reserve(n);
  for (Nat m = 1; m <= n; ++m) out.push_back(phi(m));
  return finite(std::move(out));
}

namespace {

// Walks V(n) from the largest element down; stops early when `visit` returns false.
template <class F>
void walk_view(const InteractionSeq& seq, Nat n, F visit) {
  if (n == 0) return;
  Nat m = n - 1;
  while (true) {
    if (!visit(m)) return;
    if (m == 0) return;
    const Nat p = seq.phi(m);
    if (p == 0) return;
    if (p > m) throw InvalidSequence("phi(" + std::to_string(m) + ") >= " + std::to_string(m));
    m = p - 1;
  }
}

bool in_view(const InteractionSeq& seq, Nat n, Nat target) {
  bool found = false;
  walk_view(seq, n, [&](Nat m) {
    if (m == target) found = true;
    return m > target;
  });
  return found;
}

}  // namespace

Validation validate(const InteractionSeq& seq) {
  const Nat extent =
      seq.is_lasso() ? seq.slot_begin() + 3 * seq.shape()->cycle_len - 1 : seq.size();
  for (Nat n = 1; n <= extent; ++n) {
    const Nat p = seq.phi(n);
    if (p >= n)
      return {false, n, "phi(" + std::to_string(n) + ") = " + std::to_string(p) + " is not < " + std::to_string(n)};
    if (!in_view(seq, n, p))
      return {false, n, "phi(" + std::to_string(n) + ") = " + std::to_string(p) + " is not in V(" + std::to_string(n) + ")"};
  }
  return {};
}

std::vector<Nat> view(const InteractionSeq& seq, Nat n) {
  if (!seq.is_lasso() && n > seq.size() + 1)
    throw std::out_of_range("V(" + std::to_string(n) + ") not represented");
  std::vector<Nat> out;
  walk_view(seq, n, [&](Nat m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::vector<Span> segments_partition(const InteractionSeq& seq, Nat n) {
  if (n == 0) throw std::invalid_argument("segments_partition needs n >= 1");
  if (!seq.is_lasso() && n > seq.size() + 1)
    throw std::out_of_range("stage " + std::to_string(n) + " not represented");
  std::vector<Span> out;
  Nat m = n - 1;
  while (true) {
    if (m == 0) {
      out.push_back({0, 0, 0});
      break;
    }
    const Nat p = seq.phi(m);
    if (p > m) throw InvalidSequence("phi(" + std::to_string(m) + ") >= " + std::to_string(m));
    out.push_back({p, m, m});
    if (p == 0) break;
    m = p - 1;
  }
  return out;
}

DefiniteSegments definite_segments(const InteractionSeq& seq, Nat n) {
  DefiniteSegments out;
  out.provisional = !seq.is_lasso();
  if (n <= 1) return out;
  // In a lasso a pointer to k comes from within k + s0 + L positions.
  const Nat extent = seq.is_lasso() ? n + seq.slot_begin() + seq.shape()->cycle_len : n - 1;
  if (!seq.is_lasso() && extent > seq.size())
    throw std::out_of_range("definite_segments beyond the represented sequence");
  std::vector<bool> hit(n, false);
  for (Nat m = 1; m <= extent; ++m) {
    const Nat p = seq.phi(m);
    if (p < n) hit[p] = true;
  }
  for (Nat k = 1; k < n; ++k)
    if (!hit[k]) out.segments.push_back({seq.phi(k), k, k});
  return out;
}

NestResult nest_check(std::vector<Span> segments) {
  std::stable_sort(segments.begin(), segments.end(), [](const Span& a, const Span& b) {
    return a.left != b.left ? a.left < b.left : a.right > b.right;
  });
  std::vector<Span> open;
  for (const Span& s : segments) {
    while (!open.empty() && open.back().right < s.left) open.pop_back();
    if (!open.empty()) {
      const Span& top = open.back();
      if (!(top.left <= s.left && s.right < top.right)) return {false, std::make_pair(top, s)};
    }
    open.push_back(s);
  }
  return {};
}

void write_phi_lines(std::ostream& out, const InteractionSeq& seq) {
  if (const auto& shape = seq.shape()) {
    out << "cycle_start: " << shape->cycle_start << "\n"
        << "cycle_len: " << shape->cycle_len << "\n"
        << "shift: " << shape->shift << "\n";
  }
  for (Nat n = 1; n <= seq.size(); ++n) out << n << ": " << seq.phi(n) << "\n";
}

InteractionSeq read_phi_lines(std::istream& in) {
  std::map<std::string, Nat> header;
  std::vector<Nat> phi;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto colon = line.find(':');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (colon == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::istringstream key_in(line.substr(0, colon)), value_in(line.substr(colon + 1));
    std::string key;
    Nat value = 0;
    key_in >> key;
    if (!(value_in >> value))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad value");
    if (!key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      if (std::stoull(key) != phi.size() + 1)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": positions must be consecutive from 1");
      phi.push_back(value);
    } else if (key == "cycle_start" || key == "cycle_len" || key == "shift") {
      header[key] = value;
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (header.empty()) return InteractionSeq::finite(std::move(phi));
  if (header.size() != 3) throw std::invalid_argument("lasso header needs cycle_start, cycle_len and shift");
  return InteractionSeq::lasso(std::move(phi), {header["cycle_start"], header["cycle_len"], header["shift"]});
}

}  // namespace gamesem
