#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "omegalab/prefix.hpp"
#include "omegalab/universal.hpp"
#include "oracles.hpp"

using namespace omegalab;

namespace {

Machine all_ones_halter() {
  Machine m = blank_machine(1);
  m.rule(0, Sym::Blank) = {Sym::One, Move::R, kHalt};
  m.rule(0, Sym::Zero) = {Sym::Zero, Move::R, kHalt};
  m.rule(0, Sym::One) = {Sym::One, Move::R, kHalt};
  return m;
}

Machine random_machine(std::mt19937_64& gen, int n) {
  Machine m = blank_machine(n);
  m.start = static_cast<int>(gen() % static_cast<uint64_t>(n));
  for (Rule& r : m.rules) {
    r.write = static_cast<Sym>(gen() % 3);
    r.move = gen() % 2 ? Move::R : Move::L;
    uint64_t t = gen() % static_cast<uint64_t>(n + 1);
    r.next = t == 0 ? kHalt : static_cast<int>(t) - 1;
  }
  return m;
}

}  // namespace

TEST_CASE("the one-state halter has the expected 16 bit code") {
  CHECK(encode_machine(all_ones_halter()) == "0110111110111111");
}

TEST_CASE("decoding inverts encoding when the start state is already first") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 400; ++trial) {
    Machine m = random_machine(gen, 1 + static_cast<int>(gen() % 4));
    m.start = 0;
    auto back = decode_machine(encode_machine(m));
    REQUIRE(back.ok());
    CHECK(back.value() == m);
  }
}

TEST_CASE("codes forget state names and renumber the start state to zero") {
  Machine m = blank_machine(3);
  m.start = 2;
  m.rule(2, Sym::Blank) = {Sym::One, Move::L, 0};
  m.rule(0, Sym::One) = {Sym::Zero, Move::R, 1};
  m.states = {"x", "y", "z"};
  m.name = "whatever";

  auto back = decode_machine(encode_machine(m));
  REQUIRE(back.ok());
  CHECK(back.value().start == 0);
  CHECK(back.value().states[0] == "A");
  // Renumbering is behavior preserving and the canonical form is a fixpoint.
  CHECK(encode_machine(back.value()) == encode_machine(m));
  for (const char* input : {"", "0", "1", "10", "110"}) {
    RunOutcome a = run(m, input, 100);
    RunOutcome b = run(back.value(), input, 100);
    CHECK(a.kind == b.kind);
    CHECK(a.steps == b.steps);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("an independently written encoder produces identical codes") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    Machine m = random_machine(gen, 1 + static_cast<int>(gen() % 4));
    CHECK(encode_machine(m) == oracle::encode_tm(m));
    CHECK(self_delimit_log(encode_machine(m)) == oracle::program_of(m));
  }
}

TEST_CASE("decode rejects malformed codes with the failing bit position") {
  auto err = [](const BitString& code) {
    auto m = decode_machine(code);
    REQUIRE_FALSE(m.ok());
    return m.error();
  };

  CHECK(err("") == DecodeError{0, "truncated code: bad state count"});
  CHECK(err("1") == DecodeError{0, "state count is zero"});
  CHECK(err("0110") == DecodeError{4, "truncated code: missing write tag"});
  CHECK(err("01101") == DecodeError{5, "truncated code: missing write tag"});
  CHECK(err("011011") == DecodeError{6, "truncated code: missing move bit"});
  CHECK(err("0110111") == DecodeError{7, "truncated code: bad target state"});
  // Target 2 in a one-state machine: one past the last real state.
  CHECK(err("01101110111") == DecodeError{7, "state index out of range"});
  CHECK(err("01101111101111110") == DecodeError{16, "dangling bits after code"});
  CHECK(err("0110111").to_string() == "bit 7: truncated code: bad target state");

  // 4097 states trips the guard before any rule table is allocated.
  BitString big = self_delimit_log(nat_to_bits(4097));
  CHECK(err(big) == DecodeError{0, "state count exceeds guard"});
}

TEST_CASE("code enumeration is exhaustive, unique and prefix free") {
  std::map<size_t, int> by_len;
  std::vector<BitString> codes;
  enumerate_codes(16, [&](const Machine& m, const BitString& code) {
    ++by_len[code.size()];
    codes.push_back(code);
    CHECK(code == encode_machine(m));
    auto back = decode_machine(code);
    REQUIRE(back.ok());
    CHECK(back.value() == m);
  });

  // 13 bits is the floor: header 0110 plus three minimal 3 bit rules. One
  // rule may spend an extra bit on a nonblank write, two may, and so on.
  CHECK(by_len[13] == 8);
  CHECK(by_len[14] == 48);
  CHECK(by_len[15] == 96);
  CHECK(codes.size() == std::set<BitString>(codes.begin(), codes.end()).size());
  CHECK_FALSE(prefix_violation(codes).has_value());
}

TEST_CASE("enumeration agrees with an independent sweep of short programs") {
  // Codes of at most 15 bits wrap into programs of at most 24 bits, and no
  // two state machine fits in either budget.
  std::set<std::string> mine;
  enumerate_codes(15, [&](const Machine&, const BitString& code) {
    mine.insert(self_delimit_log(code));
  });
  std::set<std::string> theirs;
  oracle::sweep_programs(1, 24, [&](const Machine&, const std::string& program) {
    theirs.insert(program);
  });
  oracle::sweep_programs(2, 24,
                         [&](const Machine&, const std::string&) { CHECK(false); });
  CHECK(mine.size() == 152);
  CHECK(mine == theirs);
}

TEST_CASE("interpreting a code matches running the decoded machine") {
  enumerate_codes(16, [&](const Machine& m, const BitString& code) {
    for (const char* input : {"", "1", "01"}) {
      auto via_code = utm_run(code, input, 50);
      REQUIRE(via_code.ok());
      RunOutcome direct = run(m, input, 50);
      CHECK(via_code.value().kind == direct.kind);
      CHECK(via_code.value().steps == direct.steps);
      CHECK(via_code.value().ones == direct.ones);
      CHECK(via_code.value().output == direct.output);
      CHECK(via_code.value().certificate == direct.certificate);
    }
  });
  auto bad = utm_run("0110", "", 50);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.error().message == "truncated code: missing write tag");
}

TEST_CASE("wrapped length bookkeeping matches the actual wrapper") {
  for (size_t len = 0; len <= 100; ++len) {
    CHECK(self_delimited_length(len) ==
          self_delimit_log(std::string(len, '0')).size());
  }
}

TEST_CASE("packing into bytes is reversible and strict") {
  std::mt19937_64 gen(5);
  for (size_t len = 0; len <= 200; ++len) {
    BitString bits;
    for (size_t i = 0; i < len; ++i) bits.push_back(gen() % 2 ? '1' : '0');
    auto back = unpack_bits(pack_bits(bits));
    REQUIRE(back.ok());
    CHECK(back.value() == bits);
  }

  CHECK(pack_bits("") == std::vector<uint8_t>(8, 0));
  CHECK(pack_bits("1") == std::vector<uint8_t>{0, 0, 0, 0, 0, 0, 0, 1, 0x80});

  auto err = [](std::vector<uint8_t> bytes) {
    auto b = unpack_bits(bytes);
    REQUIRE_FALSE(b.ok());
    return b.error();
  };
  CHECK(err({0, 0, 0}) ==
        DecodeError{0, "packed stream shorter than its length header"});
  CHECK(err({0, 0, 0, 0, 0, 0, 0, 9, 0xff}) ==
        DecodeError{9, "packed stream shorter than declared bit count"});
  CHECK(err({0, 0, 0, 0, 0, 0, 0, 1, 0x80, 0x00}) ==
        DecodeError{1, "dangling bytes after packed bits"});
  CHECK(err({0, 0, 0, 0, 0, 0, 0, 1, 0x81}) ==
        DecodeError{1, "nonzero padding bits"});
}
