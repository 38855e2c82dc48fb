#pragma once

#include <cstdint>
#include <string>

#include "omegalab/bits.hpp"
#include "omegalab/machine.hpp"

namespace omegalab {

struct RunOptions {
  // Ring size (in steps) available to the runaway prover; motifs longer than
  // this degrade to BudgetExceeded. Cycle detection itself is O(1) memory.
  uint64_t prover_window = 1u << 16;
};

struct RunOutcome {
  enum class Kind { Halted, BudgetExceeded, ProvenNonHalting };
  enum class Certificate { ExactCycle, BlankRunaway };

  Kind kind = Kind::BudgetExceeded;

  // Halted only.
  uint64_t steps = 0;   // steps consumed, <= budget
  uint64_t ones = 0;    // One cells anywhere on the final tape
  std::string output;   // span between outermost non-blank cells, '_' inside

  // ProvenNonHalting only. period is the exact cycle length for ExactCycle.
  // For BlankRunaway it is the size of the certified repetition: the motif
  // length in steps when a replayed trace window proved the escape, or the
  // net tape growth in cells per round when symbolic induction did. A
  // period of 0 marks a structural proof (no reachable halt rule), which
  // certifies nothing about the shape of the escape.
  Certificate certificate = Certificate::ExactCycle;
  uint64_t period = 0;

  // All outcomes: number of distinct cells the head read.
  uint64_t visited = 0;

  bool operator==(const RunOutcome&) const = default;

  bool halted() const { return kind == Kind::Halted; }
};

// Budgeted execution from the machine's start state, head on the first input
// cell, input written rightward, blanks elsewhere. Certificates are sound:
// a ProvenNonHalting machine never halts at any budget.
//
// Throws std::invalid_argument for a malformed machine, non-bit input, or a
// zero budget.
RunOutcome run(const Machine& m, const BitString& input, uint64_t budget,
               const RunOptions& opt = {});

}  // namespace omegalab
