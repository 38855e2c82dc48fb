#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace omegalab {

// Tape symbols in canonical order: blank sorts before 0 before 1.
enum class Sym : uint8_t { Blank = 0, Zero = 1, One = 2 };

enum class Move : uint8_t { L = 0, R = 1 };

// Rule target meaning "no next state": the rule still writes and moves, then
// the machine stops. Halting is an action, not a state.
constexpr int kHalt = -1;

struct Rule {
  Sym write = Sym::Blank;
  Move move = Move::R;
  int next = kHalt;
  bool operator==(const Rule&) const = default;
};

inline char sym_char(Sym s) { return s == Sym::Blank ? '_' : (s == Sym::Zero ? '0' : '1'); }
inline std::optional<Sym> sym_from_char(char c) {
  switch (c) {
    case '_': return Sym::Blank;
    case '0': return Sym::Zero;
    case '1': return Sym::One;
    default: return std::nullopt;
  }
}

// State names beyond Z fall back to S<i>; enumeration and decoding only ever
// need a handful, the fallback just keeps the scheme total.
inline std::string canonical_state_name(int i) {
  if (i >= 0 && i < 26) return std::string(1, static_cast<char>('A' + i));
  return "S" + std::to_string(i);
}

// One-tape machine with a total rule table: one rule per (state, symbol).
// States are indices; the name vector is display data for rendering only.
struct Machine {
  std::string name = "m";
  std::vector<std::string> states;
  int start = 0;
  std::vector<Rule> rules;  // 3 * states.size(), indexed state * 3 + sym

  int state_count() const { return static_cast<int>(states.size()); }
  const Rule& rule(int state, Sym sym) const {
    return rules[static_cast<size_t>(state) * 3 + static_cast<size_t>(sym)];
  }
  Rule& rule(int state, Sym sym) {
    return rules[static_cast<size_t>(state) * 3 + static_cast<size_t>(sym)];
  }
};

// Structural equality: state count, start and rule table. Names are display
// data and machine codes do not carry them, so they cannot participate.
inline bool operator==(const Machine& a, const Machine& b) {
  return a.states.size() == b.states.size() && a.start == b.start && a.rules == b.rules;
}
inline bool operator!=(const Machine& a, const Machine& b) { return !(a == b); }

// Well-formedness: nonempty, total rules, all indices in range.
inline std::optional<std::string> validate(const Machine& m) {
  int n = m.state_count();
  if (n < 1) return "machine has no states";
  if (m.start < 0 || m.start >= n) return "start state out of range";
  if (m.rules.size() != static_cast<size_t>(3 * n)) return "rule table is not total";
  for (const Rule& r : m.rules)
    if (r.next < kHalt || r.next >= n) return "rule targets a state out of range";
  return std::nullopt;
}

// Fresh machine with n states named canonically, every rule (blank, R, HALT).
inline Machine blank_machine(int n) {
  Machine m;
  m.states.reserve(n);
  for (int i = 0; i < n; ++i) m.states.push_back(canonical_state_name(i));
  m.rules.assign(static_cast<size_t>(3 * n), Rule{});
  return m;
}

}  // namespace omegalab
