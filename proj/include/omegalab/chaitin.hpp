#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omegalab/bits.hpp"
#include "omegalab/machine.hpp"
#include "omegalab/mdl.hpp"
#include "omegalab/prefix.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

/**
 * Two-tape self-delimiting machine: a finite read-once program tape scanned
 * left to right, plus a doubly-infinite work tape.
 *
 * A rule is selected by (state, program symbol under the program head, work
 * bit under the work head). The program head starts on a virtual blank one
 * square left of the program, so the program symbol is _ there and 0/1 on
 * the program proper. Unwritten work cells read as work bit 0; writes are
 * always 0 or 1, never blank.
 *
 * A rule either advances the program head one square (A) or leaves it (S),
 * and always writes a work bit, moves the work head, and selects the next
 * state or HALT. The advance flag of a HALT rule is ignored.
 *
 * Halting discipline, which is what makes halting program sets prefix-free:
 *
 *   - a HALT rule firing while the program head is on the last program
 *     square: Halted. The machine has read its whole program, no more.
 *   - a HALT rule firing any earlier: HaltedEarly, outcome undefined. Every
 *     extension of a halting program dies here.
 *   - an advance moving the head past the last square: ProgramExhaustedEarly,
 *     outcome undefined. Every proper prefix of a halting program dies here.
 *
 * For the empty program the virtual blank square is itself the last square,
 * so a machine halts on "" only by halting before any advance.
 */
struct CmRule {
  bool advance = false;
  Sym write = Sym::Zero;  // Zero or One, never Blank
  Move move = Move::R;
  int next = kHalt;
  bool operator==(const CmRule&) const = default;
};

struct ChaitinMachine {
  std::string name = "cm";
  std::vector<std::string> states;
  int start = 0;
  // 6 per state: (program symbol _ 0 1) x (work bit 0 1).
  std::vector<CmRule> rules;

  int state_count() const { return static_cast<int>(states.size()); }
  const CmRule& rule(int state, Sym prog, int work_bit) const {
    return rules[static_cast<size_t>(state) * 6 +
                 static_cast<size_t>(prog) * 2 + static_cast<size_t>(work_bit)];
  }
  CmRule& rule(int state, Sym prog, int work_bit) {
    return rules[static_cast<size_t>(state) * 6 +
                 static_cast<size_t>(prog) * 2 + static_cast<size_t>(work_bit)];
  }
};

inline bool operator==(const ChaitinMachine& a, const ChaitinMachine& b) {
  return a.states.size() == b.states.size() && a.start == b.start &&
         a.rules == b.rules;
}
inline bool operator!=(const ChaitinMachine& a, const ChaitinMachine& b) {
  return !(a == b);
}

std::optional<std::string> validate(const ChaitinMachine& m);

struct CmOutcome {
  enum class Status {
    Halted,
    HaltedEarly,
    ProgramExhaustedEarly,
    BudgetExceeded,
    ProvenNonHalting,
  };

  Status status = Status::BudgetExceeded;
  uint64_t steps = 0;
  std::string output;   // work-tape span at halt, same trim as core runs
  uint64_t period = 0;  // exact cycle length when ProvenNonHalting

  bool operator==(const CmOutcome&) const = default;

  bool halted() const { return status == Status::Halted; }
};

// Program head left of p, work tape holding q with its head on the first
// bit. ProvenNonHalting comes from exact configuration-cycle detection; a
// cycle pins the program head forever, so the program can never complete.
CmOutcome run_cm(const ChaitinMachine& m, const BitString& p,
                 const BitString& q, uint64_t budget);

// All programs of length <= max_len (empty work tape) that halt within
// budget, in length-then-lexicographic order. Prefix-freeness holds by the
// halting discipline above; a violation would be an engine bug and throws
// std::logic_error. max_len is guarded at 24.
PrefixFreeSet halting_set(const ChaitinMachine& m, uint64_t max_len,
                          uint64_t budget);

/**
 * Text dialect, sharing the layout of the one-tape format:
 *
 *   chaitin NAME
 *   states: S T
 *   start: S
 *   S _ 0 -> A 0 R S
 *   ...
 *
 * Rule lines read STATE PROGSYM WORKBIT -> ADVANCE WRITE MOVE NEXT with
 * ADVANCE one of A (advance) or S (stay). Six rules per state.
 */
Expected<ChaitinMachine, ParseError> parse_cm(const std::string& text);
std::string render_cm(const ChaitinMachine& m);

}  // namespace omegalab
