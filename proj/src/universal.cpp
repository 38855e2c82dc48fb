#include "omegalab/universal.hpp"

#include <stdexcept>

#include "omegalab/prefix.hpp"

namespace omegalab {
namespace {

// Decoding guard; far beyond anything enumerable, but keeps adversarial
// inputs from allocating absurd rule tables.
constexpr uint64_t kMaxStates = 4096;

const char* write_tag(Sym s) {
  switch (s) {
    case Sym::Blank: return "0";
    case Sym::Zero: return "10";
    default: return "11";
  }
}

}  // namespace

std::string DecodeError::to_string() const {
  return "bit " + std::to_string(bit_pos) + ": " + message;
}

BitString encode_machine(const Machine& m) {
  if (auto err = validate(m)) {
    throw std::invalid_argument("encode_machine: " + *err);
  }
  const int n = m.state_count();

  // Emission order puts the start state first; remaining states keep their
  // relative order. renum maps machine indices to emitted indices.
  std::vector<int> renum(static_cast<size_t>(n));
  std::vector<int> order;
  order.reserve(static_cast<size_t>(n));
  order.push_back(m.start);
  for (int i = 0; i < n; ++i) {
    if (i != m.start) order.push_back(i);
  }
  for (int e = 0; e < n; ++e) renum[static_cast<size_t>(order[static_cast<size_t>(e)])] = e;

  BitString code = self_delimit_log(nat_to_bits(static_cast<uint64_t>(n)));
  for (int e = 0; e < n; ++e) {
    int q = order[static_cast<size_t>(e)];
    for (int s = 0; s < 3; ++s) {
      const Rule& r = m.rule(q, static_cast<Sym>(s));
      code += write_tag(r.write);
      code += r.move == Move::L ? '0' : '1';
      uint64_t target =
          r.next == kHalt
              ? 0
              : static_cast<uint64_t>(renum[static_cast<size_t>(r.next)]) + 1;
      code += self_delimit_log(nat_to_bits(target));
    }
  }
  return code;
}

Expected<Machine, DecodeError> decode_machine(const BitString& code) {
  size_t pos = 0;
  auto field = [&](const char* what,
                   std::optional<uint64_t>& out) -> std::optional<DecodeError> {
    size_t start = pos;
    auto payload = read_self_delimit_log(code, &pos);
    if (!payload) {
      return DecodeError{start, std::string("truncated code: bad ") + what};
    }
    out = bits_to_nat(*payload);
    if (!out) {
      return DecodeError{start, std::string(what) + " field too large"};
    }
    return std::nullopt;
  };

  std::optional<uint64_t> count;
  if (auto e = field("state count", count)) return *e;
  if (*count == 0) return DecodeError{0, "state count is zero"};
  if (*count > kMaxStates) return DecodeError{0, "state count exceeds guard"};
  const int n = static_cast<int>(*count);

  Machine m = blank_machine(n);
  for (int q = 0; q < n; ++q) {
    for (int s = 0; s < 3; ++s) {
      Rule& r = m.rule(q, static_cast<Sym>(s));
      if (pos >= code.size()) {
        return DecodeError{pos, "truncated code: missing write tag"};
      }
      if (code[pos] == '0') {
        r.write = Sym::Blank;
        ++pos;
      } else {
        ++pos;
        if (pos >= code.size()) {
          return DecodeError{pos, "truncated code: missing write tag"};
        }
        r.write = code[pos] == '0' ? Sym::Zero : Sym::One;
        ++pos;
      }
      if (pos >= code.size()) {
        return DecodeError{pos, "truncated code: missing move bit"};
      }
      r.move = code[pos] == '0' ? Move::L : Move::R;
      ++pos;

      size_t target_at = pos;
      std::optional<uint64_t> target;
      if (auto e = field("target state", target)) return *e;
      if (*target == 0) {
        r.next = kHalt;
      } else if (*target <= *count) {
        r.next = static_cast<int>(*target) - 1;
      } else {
        return DecodeError{target_at, "state index out of range"};
      }
    }
  }
  if (pos != code.size()) {
    return DecodeError{pos, "dangling bits after code"};
  }
  return m;
}

Expected<RunOutcome, DecodeError> utm_run(const BitString& code,
                                          const BitString& input,
                                          uint64_t budget,
                                          const RunOptions& opt) {
  auto m = decode_machine(code);
  if (!m.ok()) return m.error();
  return run(m.value(), input, budget, opt);
}

size_t self_delimited_length(size_t len) {
  size_t header = 0;
  for (size_t v = len; v > 0; v >>= 1) ++header;
  return len + 2 * header + 1;
}

void enumerate_codes(
    size_t max_code_bits,
    const std::function<void(const Machine&, const BitString& code)>& visit) {
  for (int n = 1;; ++n) {
    BitString header = self_delimit_log(nat_to_bits(static_cast<uint64_t>(n)));
    const size_t slots = static_cast<size_t>(3 * n);
    // Cheapest rule is 3 bits: blank write, move, HALT target.
    if (header.size() + 3 * slots > max_code_bits) break;

    std::vector<BitString> targets;
    targets.reserve(static_cast<size_t>(n) + 1);
    for (uint64_t k = 0; k <= static_cast<uint64_t>(n); ++k) {
      targets.push_back(self_delimit_log(nat_to_bits(k)));
    }

    Machine m = blank_machine(n);
    BitString code = header;

    auto dfs = [&](auto&& self, size_t slot) -> void {
      if (slot == slots) {
        visit(m, code);
        return;
      }
      const size_t floor_rest = 3 * (slots - slot - 1);
      Rule& r = m.rules[slot];
      for (int w = 0; w < 3; ++w) {
        const char* tag = write_tag(static_cast<Sym>(w));
        const size_t tag_len = w == 0 ? 1 : 2;
        for (int mv = 0; mv < 2; ++mv) {
          for (uint64_t k = 0; k <= static_cast<uint64_t>(n); ++k) {
            size_t rule_len = tag_len + 1 + targets[k].size();
            if (code.size() + rule_len + floor_rest > max_code_bits) continue;
            size_t mark = code.size();
            code += tag;
            code += mv == 0 ? '0' : '1';
            code += targets[k];
            r = Rule{static_cast<Sym>(w), mv == 0 ? Move::L : Move::R,
                     k == 0 ? kHalt : static_cast<int>(k) - 1};
            self(self, slot + 1);
            code.resize(mark);
          }
        }
      }
      r = Rule{};
    };
    dfs(dfs, 0);
  }
}

std::vector<uint8_t> pack_bits(const BitString& bits) {
  std::vector<uint8_t> out;
  out.reserve(8 + (bits.size() + 7) / 8);
  uint64_t len = bits.size();
  for (int i = 7; i >= 0; --i) {
    out.push_back(static_cast<uint8_t>((len >> (8 * i)) & 0xff));
  }
  uint8_t acc = 0;
  int filled = 0;
  for (char c : bits) {
    acc = static_cast<uint8_t>((acc << 1) | (c == '1' ? 1 : 0));
    if (++filled == 8) {
      out.push_back(acc);
      acc = 0;
      filled = 0;
    }
  }
  if (filled > 0) out.push_back(static_cast<uint8_t>(acc << (8 - filled)));
  return out;
}

Expected<BitString, DecodeError> unpack_bits(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 8) {
    return DecodeError{0, "packed stream shorter than its length header"};
  }
  uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len = (len << 8) | bytes[static_cast<size_t>(i)];
  uint64_t need = 8 + (len + 7) / 8;
  if (bytes.size() < need) {
    return DecodeError{len, "packed stream shorter than declared bit count"};
  }
  if (bytes.size() > need) {
    return DecodeError{len, "dangling bytes after packed bits"};
  }
  BitString bits;
  bits.reserve(len);
  for (uint64_t i = 0; i < len; ++i) {
    uint8_t byte = bytes[8 + i / 8];
    bits.push_back((byte >> (7 - i % 8)) & 1 ? '1' : '0');
  }
  // Padding must be zero so pack is the unique preimage.
  uint64_t pad = (8 - len % 8) % 8;
  if (pad > 0) {
    uint8_t last = bytes.back();
    if ((last & ((1u << pad) - 1)) != 0) {
      return DecodeError{len, "nonzero padding bits"};
    }
  }
  return bits;
}

}  // namespace omegalab
