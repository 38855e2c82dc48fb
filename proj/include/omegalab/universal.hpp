#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "omegalab/bits.hpp"
#include "omegalab/machine.hpp"
#include "omegalab/run.hpp"
#include "omegalab/util.hpp"

namespace omegalab {

struct DecodeError {
  size_t bit_pos = 0;  // offset of the field where decoding failed
  std::string message;

  bool operator==(const DecodeError&) const = default;
  std::string to_string() const;
};

/**
 * Canonical machine code.
 *
 * code(m) = L(state count) ++ per rule [ write tag, move bit, L(target) ]
 *
 * where L is the logarithmic self-delimiting code applied to the
 * length-lexicographic index of the integer, the write tag is 0 for blank,
 * 10 for 0, 11 for 1, the move bit is 0 for L and 1 for R, and the target
 * is 0 for HALT or 1 + state index. Rules appear state-major with the start
 * state renumbered to 0 and symbols in order _ 0 1.
 *
 * Every field set is prefix-free and the field count is determined by the
 * state count, so the set of all machine codes is itself prefix-free and a
 * code can be followed by arbitrary payload bits without delimiters.
 */
BitString encode_machine(const Machine& m);

// Strict inverse: rejects truncated codes, dangling bits, non-canonical
// integer fields and out-of-range state indices. The result carries
// canonical state names A, B, C, ... with start state A.
Expected<Machine, DecodeError> decode_machine(const BitString& code);

// Interprets the code and runs the decoded machine: identical RunOutcome to
// run(decode_machine(code), input, budget), certificates included.
Expected<RunOutcome, DecodeError> utm_run(const BitString& code,
                                          const BitString& input,
                                          uint64_t budget,
                                          const RunOptions& opt = {});

// Visits every well-formed machine code of at most max_code_bits bits,
// each exactly once, paired with its decoded machine. Deterministic order:
// ascending state count, then rule fields in tag order. The Machine
// reference is reused between calls; copy it to keep it.
void enumerate_codes(
    size_t max_code_bits,
    const std::function<void(const Machine&, const BitString& code)>& visit);

// Length of the program wrapping a payload of len bits in the logarithmic
// self-delimiting code: len + 2 ceil(log2(len + 1)) + 1.
size_t self_delimited_length(size_t len);

/**
 * Packed byte form: 8-byte big-endian bit count, then the bits packed
 * most-significant-bit first, zero-padded in the final byte. unpack_bits
 * rejects short streams, dangling bytes and nonzero padding.
 */
std::vector<uint8_t> pack_bits(const BitString& bits);
Expected<BitString, DecodeError> unpack_bits(const std::vector<uint8_t>& bytes);

}  // namespace omegalab
