#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace omegalab {

// Bit strings are std::string over '0'/'1'. Tape snapshots additionally use
// '_' for blank cells, so a halted machine's output is a "sym string": it is
// a bit string exactly when the trimmed span contains no blanks.
using BitString = std::string;

inline bool is_bit_string(const std::string& s) {
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

inline bool is_sym_string(const std::string& s) {
  for (char c : s)
    if (c != '0' && c != '1' && c != '_') return false;
  return true;
}

// Plain binary numeral, most significant bit first; numeral(0) is the empty
// string. |numeral(n)| = ceil(log2(n + 1)).
inline std::string numeral(uint64_t n) {
  if (n == 0) return "";
  std::string s;
  while (n > 0) {
    s.push_back(static_cast<char>('0' + (n & 1)));
    n >>= 1;
  }
  return {s.rbegin(), s.rend()};
}

// Value of a canonical numeral: empty or starting with '1'. Rejects
// leading zeros and anything longer than 63 bits.
inline std::optional<uint64_t> numeral_value(const std::string& s) {
  if (s.empty()) return 0;
  if (s[0] != '1' || s.size() > 63) return std::nullopt;
  uint64_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    v = (v << 1) | static_cast<uint64_t>(c - '0');
  }
  return v;
}

// Length-lexicographic bijection between naturals and bit strings:
// 0 <-> "", 1 <-> "0", 2 <-> "1", 3 <-> "00", ... Used for integer fields
// inside machine codes; composing it with a self-delimiting code keeps those
// fields short and makes every bit pattern of the right shape meaningful.
inline std::string nat_to_bits(uint64_t k) {
  std::string s = numeral(k + 1);
  return s.substr(1);
}

inline std::optional<uint64_t> bits_to_nat(const std::string& s) {
  if (s.size() > 62) return std::nullopt;
  uint64_t v = 1;
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    v = (v << 1) | static_cast<uint64_t>(c - '0');
  }
  return v - 1;
}

}  // namespace omegalab
