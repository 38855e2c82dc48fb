#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "omegalab/bits.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/prefix.hpp"
#include "omegalab/run.hpp"
#include "omegalab/universal.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

/**
 * The fixed universal model behind every estimator here: a program is a
 * machine code wrapped in the logarithmic self-delimiting envelope,
 *
 *   p = self_delimit_log(encode_machine(m)),
 *
 * and U(p) runs m on empty input. The program set inherits prefix-freeness
 * from the envelope, so Kraft sums over halting programs stay below 1 and
 * the dyadic Omega bounds are meaningful. All bounds produced by this
 * module are relative to this one model.
 *
 * Searches sweep every program up to the requested length, running each for
 * up to the step budget; any fair interleaving would find the same halting
 * set, so results are schedule-independent. Length guards cap max_len at 40
 * bits, which keeps the sweep within the complete two-state machine family;
 * past that the walk grows by orders of magnitude per added state.
 */

// U(p). Decode failures of the envelope or the embedded code are reported
// with bit positions relative to the whole program.
Expected<RunOutcome, DecodeError> run_program(const BitString& program,
                                              uint64_t budget);

struct ComplexityBound {
  BitString target;
  std::optional<uint64_t> bound;  // min program length, nullopt = none found
  BitString witness;  // lexicographically smallest program of that length
  uint64_t max_len = 0;
  uint64_t budget = 0;
  uint64_t programs_run = 0;
};

// Upper bound on algorithmic complexity: the shortest program of length
// <= max_len producing exactly x within budget steps. Larger budgets or
// lengths can only tighten the bound, never loosen it.
ComplexityBound h_upper(const BitString& x, uint64_t max_len, uint64_t budget);

// Exact lower bound on universal probability: sum of 2^-|p| over every
// halting program of length <= max_len whose output is x.
Dyadic p_u_lower(const BitString& x, uint64_t max_len, uint64_t budget);

struct OmegaEstimate {
  Dyadic value;
  uint64_t n = 0;       // programs of length < n were swept
  uint64_t budget = 0;
  PrefixFreeSet halted_programs;
};

// Exact lower bound on the halting probability: sum of 2^-|p| over programs
// |p| < n halting within budget. value reproduces
// kraft_sum(halted_programs) bit for bit.
OmegaEstimate omega_lower(uint64_t n, uint64_t budget);

struct MonteCarloEstimate {
  uint64_t halted = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  uint64_t budget = 0;

  // The estimate is the exact ratio halted / samples; this is display only.
  double approx() const {
    return samples == 0 ? 0.0
                        : static_cast<double>(halted) /
                              static_cast<double>(samples);
  }
};

// Samples the halting probability with fair coin flips: each sample draws
// program bits on demand until the self-delimiting format completes (or
// provably cannot, or 64 drawn bits), then runs the program under budget.
// Sample i uses its own generator derived from (seed, i), so results are
// identical no matter how samples are split across workers.
MonteCarloEstimate omega_montecarlo(uint64_t samples, uint64_t budget,
                                    uint64_t seed, int workers = 0);

struct DeficiencyReport {
  ComplexityBound search;
  uint64_t length = 0;  // |x|
  bool compressible = false;
  uint64_t saved_bits = 0;  // |x| - bound when compressible

  // Search can certify compressibility, never randomness: a short program
  // may always exist beyond the swept lengths and budgets.
  std::string verdict() const {
    return compressible
               ? "compressible by " + std::to_string(saved_bits) + " bits"
               : "inconclusive";
  }
};

DeficiencyReport randomness_deficiency(const BitString& x, uint64_t max_len,
                                       uint64_t budget);

// Pairing used by the subadditivity probe: x self-delimited, then y raw.
BitString pair_encode(const BitString& x, const BitString& y);

}  // namespace omegalab
