#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "omegalab/bits.hpp"

namespace omegalab {

// Flipped diagonal of a table of bit strings: output bit i is row i's bit i
// negated, so the output differs from every row. Row i must carry at least
// i + 1 bits.
BitString diagonal(const std::vector<BitString>& table);

struct CollatzResult {
  bool reached_one = false;
  uint64_t steps = 0;  // iterations to reach 1, or budget when it ran out
  mpz_class peak;      // largest value seen, the start included
};

// Iterates n -> n/2 (even), n -> 3n+1 (odd) until 1 or the budget runs out.
// Unbounded arithmetic throughout.
CollatzResult collatz_steps(const mpz_class& n, uint64_t budget);

struct CollatzRangeReport {
  bool all_halted = false;
  uint64_t max_steps = 0;
  uint64_t argmax = 0;  // smallest n in range attaining max_steps
  uint64_t checked = 0;

  bool operator==(const CollatzRangeReport&) const = default;
};

// Verifies every n in [lo, hi] reaches 1. Trajectories are memoized against
// already-verified smaller values, so the budget caps only the freshly
// simulated part per n; recorded step counts are full trajectory lengths.
// Sharded sub-ranges merge deterministically.
CollatzRangeReport collatz_verify_range(uint64_t lo, uint64_t hi,
                                        uint64_t budget, int workers = 0);

// k-fold application of 0 -> 01, 1 -> 10 to "0", built by the equivalent
// doubling rule t_{k+1} = t_k ++ complement(t_k). 2^k bits; k <= 24.
BitString thue_morse(int k);

struct CubeWitness {
  size_t pos = 0;
  BitString factor;

  bool operator==(const CubeWitness&) const = default;
};

// First cubed factor ppp in x, smallest position then shortest p; nullopt
// when x is cube-free.
std::optional<CubeWitness> find_cube(const std::string& x);

inline bool is_cube_free(const std::string& x) { return !find_cube(x); }

struct RationalBounds {
  mpq_class lo, hi;
};

// The bracket ((k-1)/n, (k+1)/n) around a computable real from its
// approximator n -> k(n) with |k(n)/n - x| < 1/n. Width exactly 2/n.
RationalBounds computable_real_bounds(
    const std::function<mpz_class(const mpz_class&)>& approximator,
    const mpz_class& n);

// Approximators for the reals the bounds are demonstrated on.
mpz_class approx_half(const mpz_class& n);   // round(n / 2)
mpz_class approx_sqrt2(const mpz_class& n);  // floor(sqrt(2) * n)
mpz_class approx_phi(const mpz_class& n);    // floor(golden ratio * n)

struct ScalingLaw {
  uint64_t k = 1;     // algorithm exponent
  double alpha = 1;   // technology exponent
  double c = 1;

  bool operator==(const ScalingLaw&) const = default;
};

// Largest feasible problem size under N^k * ell^alpha = c at feature size
// ell: (c / ell^alpha)^(1/k). The one deliberately floating-point
// computation in the library.
double scaling_nmax(const ScalingLaw& law, double ell);

}  // namespace omegalab
