#include "omegalab/chaitin.hpp"

#include <map>
#include <stdexcept>

#include "engine_common.hpp"
#include "text_common.hpp"

namespace omegalab {

using detail::HashedTape;
using detail::Tape;
using detail::Token;
using detail::scalar_hash;

std::optional<std::string> validate(const ChaitinMachine& m) {
  int n = m.state_count();
  if (n < 1) return "machine has no states";
  if (m.start < 0 || m.start >= n) return "start state out of range";
  if (m.rules.size() != static_cast<size_t>(6 * n)) {
    return "rule table is not total";
  }
  for (const CmRule& r : m.rules) {
    if (r.next < kHalt || r.next >= n) {
      return "rule targets a state out of range";
    }
    if (r.write == Sym::Blank) return "rule writes blank on the work tape";
  }
  return std::nullopt;
}

namespace {

constexpr uint64_t kStateSalt = 0x2545f4914f6cdd1dULL;
constexpr uint64_t kProgSalt = 0x9e6c63d0a0e1f1c3ULL;
constexpr uint64_t kWorkSalt = 0x123456789abcdef1ULL;

struct CmSnapshot {
  int state = 0;
  int64_t ph = 0;
  int64_t wh = 0;
  Tape tape;
};

struct CmRunner {
  HashedTape tape;
  CmSnapshot tortoise;
};

thread_local CmRunner tls_cm_runner;

uint64_t cm_config_hash(const HashedTape& tape, int state, int64_t ph,
                        int64_t wh) {
  return tape.hash() ^ scalar_hash(kStateSalt, static_cast<uint64_t>(state)) ^
         scalar_hash(kProgSalt, static_cast<uint64_t>(ph)) ^
         scalar_hash(kWorkSalt, static_cast<uint64_t>(wh));
}

std::string work_span(const HashedTape& tape) {
  std::string out;
  int64_t lo = 0, hi = 0;
  if (!tape.tape().span(lo, hi)) return out;
  out.reserve(static_cast<size_t>(hi - lo + 1));
  for (int64_t p = lo; p <= hi; ++p) {
    out.push_back(sym_char(static_cast<Sym>(tape.read(p))));
  }
  return out;
}

}  // namespace

CmOutcome run_cm(const ChaitinMachine& m, const BitString& p,
                 const BitString& q, uint64_t budget) {
  if (auto err = validate(m)) {
    throw std::invalid_argument("run_cm: " + *err);
  }
  if (!is_bit_string(p) || !is_bit_string(q)) {
    throw std::invalid_argument("run_cm: tapes must consist of 0 and 1");
  }
  if (budget == 0) {
    throw std::invalid_argument("run_cm: budget must be positive");
  }

  CmRunner& r = tls_cm_runner;
  r.tape.clear();
  for (size_t i = 0; i < q.size(); ++i) {
    r.tape.write(static_cast<int64_t>(i),
                 static_cast<uint8_t>(q[i] == '1' ? Sym::One : Sym::Zero));
  }

  const int64_t plen = static_cast<int64_t>(p.size());
  int state = m.start;
  int64_t ph = -1;
  int64_t wh = 0;

  r.tortoise = {state, ph, wh, r.tape.tape()};
  uint64_t tortoise_hash = cm_config_hash(r.tape, state, ph, wh);
  uint64_t power = 1;
  uint64_t lam = 1;

  for (uint64_t t = 0; t < budget; ++t) {
    Sym prog = ph < 0 ? Sym::Blank
                      : (p[static_cast<size_t>(ph)] == '1' ? Sym::One
                                                           : Sym::Zero);
    int work_bit = r.tape.read(wh) == static_cast<uint8_t>(Sym::One) ? 1 : 0;
    const CmRule& rule = m.rule(state, prog, work_bit);

    r.tape.write(wh, static_cast<uint8_t>(rule.write));
    wh += rule.move == Move::R ? 1 : -1;

    if (rule.next == kHalt) {
      CmOutcome out;
      out.steps = t + 1;
      if (ph == plen - 1) {
        out.status = CmOutcome::Status::Halted;
        out.output = work_span(r.tape);
      } else {
        out.status = CmOutcome::Status::HaltedEarly;
      }
      return out;
    }

    if (rule.advance) {
      ++ph;
      if (ph == plen) {
        CmOutcome out;
        out.status = CmOutcome::Status::ProgramExhaustedEarly;
        out.steps = t + 1;
        return out;
      }
    }
    state = rule.next;

    uint64_t h = cm_config_hash(r.tape, state, ph, wh);
    if (h == tortoise_hash && state == r.tortoise.state &&
        ph == r.tortoise.ph && wh == r.tortoise.wh &&
        r.tape.tape() == r.tortoise.tape) {
      CmOutcome out;
      out.status = CmOutcome::Status::ProvenNonHalting;
      out.steps = t + 1;
      out.period = lam;
      return out;
    }
    if (lam == power) {
      r.tortoise = {state, ph, wh, r.tape.tape()};
      tortoise_hash = h;
      power <<= 1;
      lam = 0;
    }
    ++lam;
  }

  CmOutcome out;
  out.status = CmOutcome::Status::BudgetExceeded;
  out.steps = budget;
  return out;
}

PrefixFreeSet halting_set(const ChaitinMachine& m, uint64_t max_len,
                          uint64_t budget) {
  if (max_len > 24) {
    throw std::invalid_argument("halting_set: max_len exceeds desk guard 24");
  }
  std::vector<std::string> halted;
  BitString p;
  for (uint64_t len = 0; len <= max_len; ++len) {
    p.assign(len, '0');
    for (uint64_t v = 0; v < (1ull << len); ++v) {
      for (uint64_t i = 0; i < len; ++i) {
        p[i] = (v >> (len - 1 - i)) & 1 ? '1' : '0';
      }
      if (run_cm(m, p, "", budget).halted()) halted.push_back(p);
    }
  }
  auto set = PrefixFreeSet::make(std::move(halted));
  if (!set.ok()) {
    throw std::logic_error("halting_set: prefix-freeness violated by '" +
                           set.error().prefix + "' < '" +
                           set.error().extension + "'");
  }
  return set.value();
}

namespace {

using Line = std::pair<size_t, std::vector<Token>>;

Expected<ChaitinMachine, ParseError> cm_fail(size_t line, size_t col,
                                             std::string message) {
  return ParseError{line, col, std::move(message)};
}

size_t past_end(const std::vector<Token>& toks) {
  return toks.empty() ? 1 : toks.back().col + toks.back().text.size();
}

}  // namespace

Expected<ChaitinMachine, ParseError> parse_cm(const std::string& text) {
  std::vector<Line> lines;
  for (auto& [no, raw] : detail::split_lines(text)) {
    if (detail::comment_or_blank(raw)) continue;
    lines.emplace_back(no, detail::split_tokens(raw));
  }
  size_t eof_line = lines.empty() ? 1 : lines.back().first + 1;

  if (lines.empty()) return cm_fail(eof_line, 1, "expected 'chaitin NAME'");
  {
    auto& [no, toks] = lines[0];
    if (toks[0].text != "chaitin") {
      return cm_fail(no, toks[0].col, "expected 'chaitin NAME'");
    }
    if (toks.size() < 2) {
      return cm_fail(no, past_end(toks), "missing machine name");
    }
    if (!detail::valid_name(toks[1].text)) {
      return cm_fail(no, toks[1].col,
                     "invalid machine name '" + toks[1].text + "'");
    }
    if (toks.size() > 2) {
      return cm_fail(no, toks[2].col, "unexpected token '" + toks[2].text + "'");
    }
  }

  ChaitinMachine m;
  m.name = lines[0].second[1].text;

  if (lines.size() < 2) return cm_fail(eof_line, 1, "expected 'states: ...'");
  std::map<std::string, int> index;
  {
    auto& [no, toks] = lines[1];
    if (toks[0].text != "states:") {
      return cm_fail(no, toks[0].col, "expected 'states: ...'");
    }
    if (toks.size() < 2) return cm_fail(no, past_end(toks), "no states listed");
    for (size_t i = 1; i < toks.size(); ++i) {
      const std::string& name = toks[i].text;
      if (!detail::valid_name(name) || name == "HALT") {
        return cm_fail(no, toks[i].col, "invalid state name '" + name + "'");
      }
      if (index.count(name)) {
        return cm_fail(no, toks[i].col, "duplicate state '" + name + "'");
      }
      index[name] = static_cast<int>(m.states.size());
      m.states.push_back(name);
    }
  }

  if (lines.size() < 3) return cm_fail(eof_line, 1, "expected 'start: STATE'");
  {
    auto& [no, toks] = lines[2];
    if (toks[0].text != "start:") {
      return cm_fail(no, toks[0].col, "expected 'start: STATE'");
    }
    if (toks.size() < 2) {
      return cm_fail(no, past_end(toks), "missing start state");
    }
    auto it = index.find(toks[1].text);
    if (it == index.end()) {
      return cm_fail(no, toks[1].col,
                     "unknown start state '" + toks[1].text + "'");
    }
    if (toks.size() > 2) {
      return cm_fail(no, toks[2].col, "unexpected token '" + toks[2].text + "'");
    }
    m.start = it->second;
  }

  m.rules.assign(m.states.size() * 6, CmRule{});
  std::vector<bool> seen(m.rules.size(), false);

  for (size_t li = 3; li < lines.size(); ++li) {
    auto& [no, toks] = lines[li];
    auto want = [&](size_t i, const char* what) -> std::optional<ParseError> {
      if (i < toks.size()) return std::nullopt;
      return ParseError{no, past_end(toks), std::string("missing ") + what};
    };

    if (auto e = want(0, "state")) return *e;
    auto st = index.find(toks[0].text);
    if (st == index.end()) {
      return cm_fail(no, toks[0].col, "unknown state '" + toks[0].text + "'");
    }

    if (auto e = want(1, "program symbol")) return *e;
    if (toks[1].text.size() != 1 || !sym_from_char(toks[1].text[0])) {
      return cm_fail(no, toks[1].col, "program symbol must be _, 0 or 1");
    }
    Sym prog = *sym_from_char(toks[1].text[0]);

    if (auto e = want(2, "work bit")) return *e;
    if (toks[2].text != "0" && toks[2].text != "1") {
      return cm_fail(no, toks[2].col, "work bit must be 0 or 1");
    }
    int work_bit = toks[2].text == "1" ? 1 : 0;

    if (auto e = want(3, "'->'")) return *e;
    if (toks[3].text != "->") return cm_fail(no, toks[3].col, "expected '->'");

    if (auto e = want(4, "advance flag")) return *e;
    if (toks[4].text != "A" && toks[4].text != "S") {
      return cm_fail(no, toks[4].col, "advance flag must be A or S");
    }

    if (auto e = want(5, "write bit")) return *e;
    if (toks[5].text != "0" && toks[5].text != "1") {
      return cm_fail(no, toks[5].col, "write bit must be 0 or 1");
    }

    if (auto e = want(6, "move")) return *e;
    if (toks[6].text != "L" && toks[6].text != "R") {
      return cm_fail(no, toks[6].col, "move must be L or R");
    }

    if (auto e = want(7, "target state")) return *e;
    int next = kHalt;
    if (toks[7].text != "HALT") {
      auto nx = index.find(toks[7].text);
      if (nx == index.end()) {
        return cm_fail(no, toks[7].col,
                       "unknown target '" + toks[7].text + "'");
      }
      next = nx->second;
    }

    if (toks.size() > 8) {
      return cm_fail(no, toks[8].col, "unexpected token '" + toks[8].text + "'");
    }

    size_t slot = static_cast<size_t>(st->second) * 6 +
                  static_cast<size_t>(prog) * 2 + static_cast<size_t>(work_bit);
    if (seen[slot]) {
      return cm_fail(no, toks[0].col, "duplicate rule for " + toks[0].text +
                                          " " + toks[1].text + " " +
                                          toks[2].text);
    }
    seen[slot] = true;
    m.rules[slot] = CmRule{toks[4].text == "A",
                           toks[5].text == "1" ? Sym::One : Sym::Zero,
                           toks[6].text == "L" ? Move::L : Move::R, next};
  }

  for (size_t slot = 0; slot < seen.size(); ++slot) {
    if (!seen[slot]) {
      return cm_fail(eof_line, 1,
                     "missing rule for " + m.states[slot / 6] + " " +
                         std::string(1, sym_char(static_cast<Sym>(slot % 6 / 2))) +
                         " " + std::to_string(slot % 2));
    }
  }
  return m;
}

std::string render_cm(const ChaitinMachine& m) {
  std::string out = "chaitin " + m.name + "\nstates:";
  for (const auto& s : m.states) out += " " + s;
  out += "\nstart: " + m.states[static_cast<size_t>(m.start)] + "\n";
  for (int q = 0; q < m.state_count(); ++q) {
    for (int ps = 0; ps < 3; ++ps) {
      for (int wb = 0; wb < 2; ++wb) {
        const CmRule& r = m.rule(q, static_cast<Sym>(ps), wb);
        out += m.states[static_cast<size_t>(q)];
        out += ' ';
        out += sym_char(static_cast<Sym>(ps));
        out += ' ';
        out += static_cast<char>('0' + wb);
        out += " -> ";
        out += r.advance ? 'A' : 'S';
        out += ' ';
        out += sym_char(r.write);
        out += r.move == Move::L ? " L " : " R ";
        out += r.next == kHalt ? "HALT" : m.states[static_cast<size_t>(r.next)];
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace omegalab
