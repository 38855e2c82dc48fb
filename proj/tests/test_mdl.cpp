#include <random>
#include <string>

#include "doctest.h"
#include "omegalab/mdl.hpp"
#include "omegalab/run.hpp"

using namespace omegalab;

namespace {

const char* kCanonical =
    "machine sweeper\n"
    "states: A B\n"
    "start: A\n"
    "A _ -> 1 L HALT\n"
    "A 0 -> 0 R A\n"
    "A 1 -> 1 R B\n"
    "B _ -> _ L A\n"
    "B 0 -> 1 R HALT\n"
    "B 1 -> 0 L B\n";

ParseError error_of(const std::string& text) {
  auto m = parse_machine(text);
  REQUIRE_FALSE(m.ok());
  return m.error();
}

}  // namespace

TEST_CASE("canonical text parses and renders back to itself") {
  auto m = parse_machine(kCanonical);
  REQUIRE(m.ok());
  CHECK(m.value().name == "sweeper");
  CHECK(m.value().state_count() == 2);
  CHECK(m.value().start == 0);
  CHECK(m.value().rule(0, Sym::Blank) == Rule{Sym::One, Move::L, kHalt});
  CHECK(m.value().rule(1, Sym::One) == Rule{Sym::Zero, Move::L, 1});
  CHECK(render_machine(m.value()) == kCanonical);
}

TEST_CASE("rule order, spacing and comments are free; rendering is not") {
  std::string scrambled =
      "# a comment\n"
      "machine   sweeper\n"
      "\n"
      "states:  A   B\n"
      "start:  A\n"
      "B 1 -> 0 L B\n"
      "A 0 -> 0 R A\n"
      "  # interior comment\n"
      "B _ -> _ L A\n"
      "A _ -> 1 L HALT\n"
      "B 0 -> 1 R HALT\n"
      "A 1 -> 1 R B\n";
  auto m = parse_machine(scrambled);
  REQUIRE(m.ok());
  CHECK(render_machine(m.value()) == kCanonical);
}

TEST_CASE("machine names are display data, not identity") {
  std::string renamed(kCanonical);
  renamed.replace(renamed.find("sweeper"), 7, "crawler");
  auto a = parse_machine(kCanonical);
  auto b = parse_machine(renamed);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.value() == b.value());
  CHECK(render_machine(a.value()) != render_machine(b.value()));
}

TEST_CASE("start state need not come first") {
  auto m = parse_machine(
      "machine m\n"
      "states: A B\n"
      "start: B\n"
      "A _ -> _ R A\n"
      "A 0 -> _ R A\n"
      "A 1 -> _ R A\n"
      "B _ -> 1 R HALT\n"
      "B 0 -> _ R A\n"
      "B 1 -> _ R A\n");
  REQUIRE(m.ok());
  CHECK(m.value().start == 1);
  CHECK(run(m.value(), "", 10).halted());
}

TEST_CASE("errors carry the line and column of the offending token") {
  ParseError e = error_of("");
  CHECK(e.line == 1);
  CHECK(e.col == 1);
  CHECK(e.message == "expected 'machine NAME'");
  CHECK(e.to_string() == "line 1, col 1: expected 'machine NAME'");

  e = error_of("machine\nstates: A\nstart: A\n");
  CHECK(e.message == "missing machine name");

  e = error_of("machine m\nstates: A A\nstart: A\n");
  CHECK(e.line == 2);
  CHECK(e.message == "duplicate state 'A'");

  e = error_of("machine m\nstates: A\nstart: B\n");
  CHECK(e.line == 3);
  CHECK(e.col == 8);
  CHECK(e.message == "unknown start state 'B'");

  std::string base = "machine m\nstates: A\nstart: A\n";
  e = error_of(base + "Q _ -> 1 R HALT\n");
  CHECK(e.line == 4);
  CHECK(e.col == 1);
  CHECK(e.message == "unknown state 'Q'");

  e = error_of(base + "A x -> 1 R HALT\n");
  CHECK(e.col == 3);
  CHECK(e.message == "symbol must be _, 0 or 1");

  e = error_of(base + "A _ => 1 R HALT\n");
  CHECK(e.message == "expected '->'");

  e = error_of(base + "A _ -> b R HALT\n");
  CHECK(e.message == "write symbol must be _, 0 or 1");

  e = error_of(base + "A _ -> 1 U HALT\n");
  CHECK(e.message == "move must be L or R");

  e = error_of(base + "A _ -> 1 R NOWHERE\n");
  CHECK(e.message == "unknown target 'NOWHERE'");

  e = error_of(base + "A _ -> 1 R HALT extra\n");
  CHECK(e.message == "unexpected token 'extra'");

  e = error_of(base + "A _ -> 1 R\n");
  CHECK(e.message == "missing target state");
}

TEST_CASE("the rule table must be total, without repeats") {
  std::string base = "machine m\nstates: A\nstart: A\n";
  ParseError e = error_of(base +
                          "A _ -> 1 R HALT\n"
                          "A 0 -> 1 R HALT\n");
  CHECK(e.message == "missing rule for A 1");

  e = error_of(base +
               "A _ -> 1 R HALT\n"
               "A 0 -> 1 R HALT\n"
               "A 1 -> 1 R HALT\n"
               "A _ -> 0 L HALT\n");
  CHECK(e.line == 7);
  CHECK(e.message == "duplicate rule for A _");
}

TEST_CASE("random machines survive a render and parse cycle") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(gen() % 4);
    Machine m = blank_machine(n);
    m.start = static_cast<int>(gen() % static_cast<uint64_t>(n));
    for (Rule& r : m.rules) {
      r.write = static_cast<Sym>(gen() % 3);
      r.move = gen() % 2 ? Move::R : Move::L;
      uint64_t t = gen() % static_cast<uint64_t>(n + 1);
      r.next = t == 0 ? kHalt : static_cast<int>(t) - 1;
    }
    auto back = parse_machine(render_machine(m));
    REQUIRE(back.ok());
    CHECK(back.value() == m);
    CHECK(render_machine(back.value()) == render_machine(m));
  }
}
