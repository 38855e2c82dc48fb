#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "omegalab/bits.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

/**
 * Self-delimiting codes over bit strings.
 *
 * self_delimit_unary(x) = 0^|x| 1 x            |out| = 2|x| + 1
 * self_delimit_log(x)   = self_delimit_unary(numeral(|x|)) ++ x
 *                                              |out| = |x| + 2 ceil(log2(|x|+1)) + 1
 *
 * Both code sets are prefix-free over all of {0,1}*, including the empty
 * string: self_delimit_log("") = "1".
 */
std::string self_delimit_unary(const BitString& x);
std::string self_delimit_log(const BitString& x);

// Streaming decoders: consume one codeword from bits starting at *pos and
// advance *pos past it. Return nullopt (leaving *pos unspecified) if no
// well-formed codeword starts there. read_self_delimit_log additionally
// rejects non-canonical length fields, so exactly the encoder's outputs
// decode; that strictness is what keeps the code-set measure exact.
std::optional<BitString> read_self_delimit_unary(const std::string& bits, size_t* pos);
std::optional<BitString> read_self_delimit_log(const std::string& bits, size_t* pos);

struct PrefixWitness {
  std::string prefix;     // element that is a proper prefix
  std::string extension;  // element it extends into
};

// First offending pair in sorted order, or nullopt if the set is prefix-free.
// Duplicates are ignored (a set member is not a proper prefix of itself).
std::optional<PrefixWitness> prefix_violation(std::vector<std::string> items);

// A validated prefix-free set. Construction sorts, dedupes and checks;
// the witness for a failed check names a concrete offending pair.
class PrefixFreeSet {
 public:
  PrefixFreeSet() = default;  // the empty set
  static Expected<PrefixFreeSet, PrefixWitness> make(std::vector<std::string> items);
  const std::vector<std::string>& items() const { return items_; }

 private:
  explicit PrefixFreeSet(std::vector<std::string> items) : items_(std::move(items)) {}
  std::vector<std::string> items_;  // sorted, unique, pairwise prefix-free
};

// Exact Kraft sums, sum of 2^-|x| over distinct members. No floating point
// on this path; a set is within budget iff the sum compares <= 1 exactly.
Dyadic kraft_sum(const std::vector<std::string>& items);
Dyadic kraft_sum_lengths(const std::vector<uint64_t>& lengths);

}  // namespace omegalab
