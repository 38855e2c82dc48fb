#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "omegalab/bits.hpp"
#include "omegalab/machine.hpp"
#include "omegalab/run.hpp"

namespace omegalab {

/**
 * The classic small-machine census class: n states, live rules only for
 * reads in {_, 1}, writes in {_, 1}. Each of the 2n live slots has
 * 2 * 2 * (n + 1) = 4(n + 1) options, so the class holds (4n + 4)^(2n)
 * machines: 64 at n = 1, 20736 at n = 2, 16777216 at n = 3.
 *
 * The (state, 0) slots can never fire from a blank tape, since no rule
 * writes 0; they are filled with a fixed dead rule so the machines are
 * total. Indices are the mixed-radix number with one digit per live slot,
 * slot-major (state 0 blank, state 0 one, state 1 blank, ...), each digit
 * (write * 2 + move) * (n + 1) + target with write _ < 1, move L < R and
 * target HALT < A < B < ...; index order is therefore lexicographic over
 * rule tuples.
 */
uint64_t class_size(int n);  // n in [1, 4]

Machine machine_from_index(int n, uint64_t index);

// Calls visit(index, machine) for every index in order. The Machine
// reference is reused between calls; copy it to keep it.
void enumerate_class(
    int n, const std::function<void(uint64_t, const Machine&)>& visit);

// Halting classification on blank input; Unresolved means BudgetExceeded.
RunOutcome classify(const Machine& m, uint64_t budget);

struct BeaverReport {
  int n = 0;
  uint64_t budget = 0;

  uint64_t sigma_ones = 0;  // max ones over halted machines
  uint64_t s_steps = 0;     // max steps over halted machines
  uint64_t ones_champion = 0;   // smallest index attaining sigma_ones
  uint64_t steps_champion = 0;  // smallest index attaining s_steps

  uint64_t halted = 0;
  uint64_t cycle = 0;
  uint64_t runaway = 0;
  uint64_t unresolved = 0;

  // Maxima are exact values of the class only when nothing is unresolved;
  // otherwise they are lower bounds and are reported as such.
  bool final() const { return unresolved == 0; }

  bool operator==(const BeaverReport&) const = default;
};

/**
 * Full classification of the class. With a db path, rows stream to
 * "<path>.tmp" as they are produced and an interrupted run resumes from
 * that file; on completion the rows are sorted by index and renamed into
 * place atomically. A complete database whose header matches is trusted
 * and re-aggregated without re-running.
 *
 * Database format, one row per machine after a "# bbdb n=N budget=B"
 * header:
 *
 *   index verdict steps ones certificate
 *
 * verdict is halted | cycle | runaway | budget; certificate is the proven
 * period, or "-" when there is none.
 *
 * Work shards across workers by index range; the merged report is
 * identical to the sequential one.
 */
BeaverReport sigma(int n, uint64_t budget, const std::string& db_path = "",
                   int workers = 0);

struct SigmaProgramResult {
  // Largest integer named by any halting program of length <= max_len,
  // reading the output span as a binary numeral (empty span names 0).
  // Outputs with blank cells inside the span name nothing. nullopt when no
  // program halts with a readable output.
  std::optional<mpz_class> value;
  BitString witness;  // shortest, then lexicographically smallest program

  uint64_t programs_run = 0;
  uint64_t halted = 0;
};

SigmaProgramResult sigma_program(uint64_t max_len, uint64_t budget);

}  // namespace omegalab
