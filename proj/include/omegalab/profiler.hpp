#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "omegalab/machine.hpp"
#include "omegalab/run.hpp"

namespace omegalab {

// A family of inputs indexed by problem size.
struct InputFamily {
  std::string name;
  std::function<BitString(uint64_t)> generator;
};

InputFamily unary_family();           // n -> n ones
InputFamily binary_counter_family();  // n -> binary numeral of n

// One measurement: steps until halting and tape cells scanned on the size-n
// input. Taken from halted runs only.
struct ScalingSample {
  uint64_t n = 0;
  uint64_t t = 0;
  uint64_t s = 0;

  bool operator==(const ScalingSample&) const = default;
};

// Runs the machine on family(n) for each requested size. Sizes whose run did
// not halt within the budget are left out rather than guessed at; if no size
// halts at all the measurement is vacuous and a runtime_error says so.
// Per-size runs may execute in parallel, results always come back in size
// order.
std::vector<ScalingSample> measure_scaling(const Machine& m,
                                           const InputFamily& family,
                                           const std::vector<uint64_t>& sizes,
                                           uint64_t budget, int workers = 0);

enum class ScalingField { Time, Space };

struct PowerLawFit {
  double k_hat = 0;     // fitted exponent
  double c_hat = 0;     // fitted constant
  double residual = 0;  // RMS misfit in log space
};

// Least-squares fit of log(value) = log(c) + k log(n) over the chosen field.
// Needs at least three samples spanning at least two distinct sizes, every
// value at least 1.
PowerLawFit fit_power_law(const std::vector<ScalingSample>& samples,
                          ScalingField field);

// "N,t,s" header plus one comma-separated line per sample.
std::string samples_csv(const std::vector<ScalingSample>& samples);

}  // namespace omegalab
