// Text format for formulas:
//
//   formula := "(" "and" item* ")" | "(" "or" item* ")"
//            | "(" "leaf" ("0" | "1") [string [string]] ")"
//   item    := formula | "(" "gen" (natural | "inf") string ")"
//
// A leaf carries an optional label and an optional label for its negation.
// A gen item is a countable family taken from a generator registry; the
// number is its enumeration bound. A name starting with '~' denotes the
// negated family. ';' starts a comment that runs to the end of the line.

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "gamesem/formula.hpp"

namespace gamesem {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

using GeneratorRegistry = std::map<std::string, std::function<Formula(Nat)>>;

// "true", "false", "even" (1 at even indices), "odd".
const GeneratorRegistry& default_generators();

Formula read_formula(const std::string& text,
                     const GeneratorRegistry& registry = default_generators());

// Throws std::invalid_argument for families that have no registry name.
std::string write_formula(const Formula& a);

}  // namespace gamesem
