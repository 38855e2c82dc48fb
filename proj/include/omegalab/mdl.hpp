#pragma once

#include <cstddef>
#include <string>

#include "omegalab/machine.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

// Position is 1-based; col points at the start of the offending token, or
// just past the end of the line when something is missing.
struct ParseError {
  size_t line = 0;
  size_t col = 0;
  std::string message;

  bool operator==(const ParseError&) const = default;
  std::string to_string() const;
};

// Text form of a machine:
//
//   machine NAME
//   states: A B
//   start: A
//   A _ -> 1 R HALT
//   ...
//
// One rule per (state, symbol) pair, symbols drawn from {_, 0, 1}, moves from
// {L, R}, target either a declared state or HALT. Blank lines and lines whose
// first non-space character is '#' are ignored.
Expected<Machine, ParseError> parse_machine(const std::string& text);

// Canonical text: the header trio followed by rules in declaration order,
// symbols ordered _ 0 1, single spaces, one trailing newline. Parsing the
// result reproduces the machine exactly.
std::string render_machine(const Machine& m);

}  // namespace omegalab
