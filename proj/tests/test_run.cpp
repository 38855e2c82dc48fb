#include <random>
#include <string>

#include "doctest.h"
#include "omegalab/beaver.hpp"
#include "omegalab/mdl.hpp"
#include "omegalab/run.hpp"
#include "oracles.hpp"

using namespace omegalab;

namespace {

Machine from_text(const char* text) {
  auto m = parse_machine(text);
  REQUIRE(m.ok());
  return m.value();
}

// Sweeps right over its input and drops a trailing one.
const char* kSweeper =
    "machine sweeper\n"
    "states: A\n"
    "start: A\n"
    "A _ -> 1 L HALT\n"
    "A 0 -> 0 R A\n"
    "A 1 -> 1 R A\n";

Machine random_machine(std::mt19937_64& gen, int n) {
  Machine m = blank_machine(n);
  for (Rule& r : m.rules) {
    r.write = static_cast<Sym>(gen() % 3);
    r.move = gen() % 2 ? Move::R : Move::L;
    uint64_t t = gen() % static_cast<uint64_t>(n + 1);
    r.next = t == 0 ? kHalt : static_cast<int>(t) - 1;
  }
  return m;
}

}  // namespace

TEST_CASE("halting is an action: the last rule still writes and moves") {
  Machine m = blank_machine(1);
  m.rule(0, Sym::Blank) = {Sym::One, Move::R, kHalt};
  RunOutcome out = run(m, "", 10);
  CHECK(out.halted());
  CHECK(out.steps == 1);
  CHECK(out.ones == 1);
  CHECK(out.output == "1");
  // The head never read the cell it halted on.
  CHECK(out.visited == 1);
}

TEST_CASE("right sweep scans its input plus the terminating blank") {
  Machine m = from_text(kSweeper);
  for (size_t n = 0; n <= 6; ++n) {
    RunOutcome out = run(m, std::string(n, '1'), 100);
    REQUIRE(out.halted());
    CHECK(out.steps == n + 1);
    CHECK(out.ones == n + 1);
    CHECK(out.output == std::string(n + 1, '1'));
    CHECK(out.visited == n + 1);
  }
}

TEST_CASE("output is the span between the outermost marks, blanks inside") {
  // Writes 1, skips a cell, drops a second 1 and halts: tape 1 _ 1.
  Machine m = blank_machine(3);
  m.rule(0, Sym::Blank) = {Sym::One, Move::R, 1};
  m.rule(1, Sym::Blank) = {Sym::Blank, Move::R, 2};
  m.rule(2, Sym::Blank) = {Sym::One, Move::L, kHalt};
  RunOutcome out = run(m, "", 10);
  REQUIRE(out.halted());
  CHECK(out.steps == 3);
  CHECK(out.output == "1_1");
  CHECK(out.ones == 2);
  CHECK(out.visited == 3);
}

TEST_CASE("erasing every mark leaves an empty output") {
  Machine m = blank_machine(1);
  m.rule(0, Sym::One) = {Sym::Blank, Move::R, 0};
  m.rule(0, Sym::Blank) = {Sym::Blank, Move::R, kHalt};
  RunOutcome out = run(m, "11", 10);
  REQUIRE(out.halted());
  CHECK(out.output == "");
  CHECK(out.ones == 0);
}

TEST_CASE("budget exhaustion reports the steps actually taken") {
  Machine m = from_text(kSweeper);
  RunOutcome out = run(m, "1111111111", 5);
  CHECK(out.kind == RunOutcome::Kind::BudgetExceeded);
  CHECK(out.steps == 5);
  CHECK(out.visited == 5);
}

TEST_CASE("argument guards") {
  Machine m = from_text(kSweeper);
  CHECK_THROWS_AS(run(m, "1", 0), std::invalid_argument);
  CHECK_THROWS_AS(run(m, "1_1", 10), std::invalid_argument);
  CHECK_THROWS_AS(run(m, "12", 10), std::invalid_argument);
  Machine broken = m;
  broken.rules.pop_back();
  CHECK_THROWS_AS(run(broken, "", 10), std::invalid_argument);
  Machine stray = m;
  stray.rules[0].next = 7;
  CHECK_THROWS_AS(run(stray, "", 10), std::invalid_argument);
}

TEST_CASE("an exact configuration cycle is certified with its period") {
  // Two states bouncing over the same two cells forever.
  Machine m = blank_machine(2);
  m.rule(0, Sym::Blank) = {Sym::Blank, Move::R, 1};
  m.rule(1, Sym::Blank) = {Sym::Blank, Move::L, 0};
  RunOutcome out = run(m, "", 1000);
  CHECK(out.kind == RunOutcome::Kind::ProvenNonHalting);
  CHECK(out.certificate == RunOutcome::Certificate::ExactCycle);
  CHECK(out.period == 2);
}

TEST_CASE("a straight-line escape is certified as a runaway") {
  Machine m = blank_machine(1);
  m.rule(0, Sym::Blank) = {Sym::One, Move::R, 0};
  RunOutcome out = run(m, "", 1000);
  CHECK(out.kind == RunOutcome::Kind::ProvenNonHalting);
  CHECK(out.certificate == RunOutcome::Certificate::BlankRunaway);
  CHECK(out.period == 1);
}

TEST_CASE("halted runs agree with the flat reference simulator") {
  std::mt19937_64 gen(101);
  const std::string inputs[] = {"", "0", "1", "01", "10", "110", "0011"};
  int halted_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Machine m = random_machine(gen, 1 + static_cast<int>(gen() % 3));
    for (const auto& q : inputs) {
      RunOutcome fast = run(m, q, 300);
      oracle::FlatOutcome slow = oracle::flat_run(m, q, 300);
      if (fast.halted()) {
        ++halted_seen;
        REQUIRE(slow.halted);
        CHECK(fast.steps == slow.steps);
        CHECK(fast.ones == slow.ones);
        CHECK(fast.output == slow.output);
        CHECK(fast.visited == slow.visited);
      } else {
        // Either certified or out of budget; never a missed halt.
        CHECK_FALSE(slow.halted);
      }
    }
  }
  CHECK(halted_seen > 500);  // the corpus exercises the halting path
}

TEST_CASE("non-halting certificates survive a tenfold budget") {
  std::mt19937_64 gen(202);
  int certified = 0;
  for (int trial = 0; trial < 600; ++trial) {
    Machine m = random_machine(gen, 2);
    RunOutcome first = run(m, "", 100);
    if (first.kind != RunOutcome::Kind::ProvenNonHalting) continue;
    ++certified;
    RunOutcome again = run(m, "", 1000);
    CHECK(again.kind == RunOutcome::Kind::ProvenNonHalting);
    CHECK_FALSE(oracle::flat_run(m, "", 1000).halted);
  }
  CHECK(certified > 200);
}

TEST_CASE("verdicts are stable across budgets on the full two-state class") {
  // Classification counts must not depend on when the budget runs out;
  // certificates found at 200 steps must be found at 2000 and vice versa.
  uint64_t mismatches = 0;
  enumerate_class(2, [&](uint64_t, const Machine& m) {
    RunOutcome small = run(m, "", 200);
    RunOutcome large = run(m, "", 2000);
    if (small.kind != large.kind || small.certificate != large.certificate) {
      ++mismatches;
    }
  });
  CHECK(mismatches == 0);
}

TEST_CASE("runs are pure") {
  Machine m = from_text(kSweeper);
  CHECK(run(m, "101", 50) == run(m, "101", 50));
}
