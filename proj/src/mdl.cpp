#include "omegalab/mdl.hpp"

#include <map>
#include <vector>

#include "text_common.hpp"

namespace omegalab {

using detail::Token;

std::string ParseError::to_string() const {
  return "line " + std::to_string(line) + ", col " + std::to_string(col) +
         ": " + message;
}

namespace {

using Line = std::pair<size_t, std::vector<Token>>;

Expected<Machine, ParseError> fail(size_t line, size_t col,
                                   std::string message) {
  return ParseError{line, col, std::move(message)};
}

size_t past_end(const std::vector<Token>& toks) {
  return toks.empty() ? 1 : toks.back().col + toks.back().text.size();
}

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> out;
  for (auto& [no, raw] : detail::split_lines(text)) {
    if (detail::comment_or_blank(raw)) continue;
    out.emplace_back(no, detail::split_tokens(raw));
  }
  return out;
}

}  // namespace

Expected<Machine, ParseError> parse_machine(const std::string& text) {
  auto lines = significant_lines(text);
  size_t eof_line = lines.empty() ? 1 : lines.back().first + 1;

  if (lines.empty()) return fail(eof_line, 1, "expected 'machine NAME'");
  {
    auto& [no, toks] = lines[0];
    if (toks[0].text != "machine") {
      return fail(no, toks[0].col, "expected 'machine NAME'");
    }
    if (toks.size() < 2) return fail(no, past_end(toks), "missing machine name");
    if (!detail::valid_name(toks[1].text)) {
      return fail(no, toks[1].col, "invalid machine name '" + toks[1].text + "'");
    }
    if (toks.size() > 2) {
      return fail(no, toks[2].col, "unexpected token '" + toks[2].text + "'");
    }
  }

  Machine m;
  m.name = lines[0].second[1].text;

  if (lines.size() < 2) return fail(eof_line, 1, "expected 'states: ...'");
  std::map<std::string, int> index;
  {
    auto& [no, toks] = lines[1];
    if (toks[0].text != "states:") {
      return fail(no, toks[0].col, "expected 'states: ...'");
    }
    if (toks.size() < 2) return fail(no, past_end(toks), "no states listed");
    for (size_t i = 1; i < toks.size(); ++i) {
      const std::string& name = toks[i].text;
      if (!detail::valid_name(name) || name == "HALT") {
        return fail(no, toks[i].col, "invalid state name '" + name + "'");
      }
      if (index.count(name)) {
        return fail(no, toks[i].col, "duplicate state '" + name + "'");
      }
      index[name] = static_cast<int>(m.states.size());
      m.states.push_back(name);
    }
  }

  if (lines.size() < 3) return fail(eof_line, 1, "expected 'start: STATE'");
  {
    auto& [no, toks] = lines[2];
    if (toks[0].text != "start:") {
      return fail(no, toks[0].col, "expected 'start: STATE'");
    }
    if (toks.size() < 2) return fail(no, past_end(toks), "missing start state");
    auto it = index.find(toks[1].text);
    if (it == index.end()) {
      return fail(no, toks[1].col, "unknown start state '" + toks[1].text + "'");
    }
    if (toks.size() > 2) {
      return fail(no, toks[2].col, "unexpected token '" + toks[2].text + "'");
    }
    m.start = it->second;
  }

  m.rules.assign(m.states.size() * 3, Rule{});
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
      return fail(no, toks[0].col, "unknown state '" + toks[0].text + "'");
    }

    if (auto e = want(1, "symbol")) return *e;
    if (toks[1].text.size() != 1 || !sym_from_char(toks[1].text[0])) {
      return fail(no, toks[1].col, "symbol must be _, 0 or 1");
    }
    Sym sym = *sym_from_char(toks[1].text[0]);

    if (auto e = want(2, "'->'")) return *e;
    if (toks[2].text != "->") return fail(no, toks[2].col, "expected '->'");

    if (auto e = want(3, "write symbol")) return *e;
    if (toks[3].text.size() != 1 || !sym_from_char(toks[3].text[0])) {
      return fail(no, toks[3].col, "write symbol must be _, 0 or 1");
    }

    if (auto e = want(4, "move")) return *e;
    if (toks[4].text != "L" && toks[4].text != "R") {
      return fail(no, toks[4].col, "move must be L or R");
    }

    if (auto e = want(5, "target state")) return *e;
    int next = kHalt;
    if (toks[5].text != "HALT") {
      auto nx = index.find(toks[5].text);
      if (nx == index.end()) {
        return fail(no, toks[5].col, "unknown target '" + toks[5].text + "'");
      }
      next = nx->second;
    }

    if (toks.size() > 6) {
      return fail(no, toks[6].col, "unexpected token '" + toks[6].text + "'");
    }

    size_t slot = static_cast<size_t>(st->second) * 3 +
                  static_cast<size_t>(sym);
    if (seen[slot]) {
      return fail(no, toks[0].col, "duplicate rule for " + toks[0].text + " " +
                                       toks[1].text);
    }
    seen[slot] = true;
    m.rules[slot] = Rule{*sym_from_char(toks[3].text[0]),
                         toks[4].text == "L" ? Move::L : Move::R, next};
  }

  for (size_t slot = 0; slot < seen.size(); ++slot) {
    if (!seen[slot]) {
      return fail(eof_line, 1,
                  "missing rule for " + m.states[slot / 3] + " " +
                      std::string(1, sym_char(static_cast<Sym>(slot % 3))));
    }
  }
  return m;
}

std::string render_machine(const Machine& m) {
  std::string out = "machine " + m.name + "\nstates:";
  for (const auto& s : m.states) out += " " + s;
  out += "\nstart: " + m.states[static_cast<size_t>(m.start)] + "\n";
  for (int q = 0; q < m.state_count(); ++q) {
    for (int s = 0; s < 3; ++s) {
      const Rule& r = m.rules[static_cast<size_t>(q) * 3 +
                              static_cast<size_t>(s)];
      out += m.states[static_cast<size_t>(q)];
      out += ' ';
      out += sym_char(static_cast<Sym>(s));
      out += " -> ";
      out += sym_char(r.write);
      out += r.move == Move::L ? " L " : " R ";
      out += r.next == kHalt ? "HALT" : m.states[static_cast<size_t>(r.next)];
      out += '\n';
    }
  }
  return out;
}

}  // namespace omegalab
