#include "gamesem/function_handle.hpp"

#include <sstream>
#include <stdexcept>

namespace gamesem {

FunctionHandle::FunctionHandle(std::string base_name, Base base)
    : base_name_(std::move(base_name)),
      base_(std::make_shared<const Base>(std::move(base))),
      log_(std::make_shared<std::set<Nat>>()) {}

FunctionHandle FunctionHandle::constant(Nat c) {
  return FunctionHandle("const:" + std::to_string(c), [c](Nat) { return c; });
}

FunctionHandle FunctionHandle::from_base_name(const std::string& name) {
  const std::string prefix = "const:";
  if (name.rfind(prefix, 0) != 0)
    throw std::invalid_argument("unknown function base '" + name + "'");
  return constant(std::stoull(name.substr(prefix.size())));
}

FunctionHandle FunctionHandle::updated(Nat x, Nat y) const {
  FunctionHandle out = fresh();
  out.updates_.emplace_back(x, y);
  return out;
}

FunctionHandle FunctionHandle::fresh() const {
  FunctionHandle out = *this;
  out.log_ = std::make_shared<std::set<Nat>>();
  return out;
}

Nat FunctionHandle::peek(Nat x) const {
  for (auto it = updates_.rbegin(); it != updates_.rend(); ++it)
    if (it->first == x) return it->second;
  return (*base_)(x);
}

Nat FunctionHandle::query(Nat x) const {
  log_->insert(x);
  return peek(x);
}

std::string FunctionHandle::describe() const {
  std::ostringstream out;
  out << base_name_;
  if (!updates_.empty()) {
    out << " [";
    for (std::size_t i = 0; i < updates_.size(); ++i) {
      if (i) out << ", ";
      out << updates_[i].first << "->" << updates_[i].second;
    }
    out << "]";
  }
  return out.str();
}

}  // namespace gamesem
