#include "omegalab/run.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "engine_common.hpp"

namespace omegalab {
namespace {

using detail::HashedTape;
using detail::Tape;
using detail::scalar_hash;

constexpr uint64_t kStateSalt = 0xd6e8feb86659fd93ULL;
constexpr uint64_t kPosSalt = 0xa5a5a5a55a5a5a5aULL;

uint64_t config_hash(const HashedTape& tape, int state, int64_t pos) {
  return tape.hash() ^ scalar_hash(kStateSalt, static_cast<uint64_t>(state)) ^
         scalar_hash(kPosSalt, static_cast<uint64_t>(pos));
}

// One executed step, recorded for the runaway prover. Two windows of the run
// are congruent when these fields agree entry by entry with positions shifted
// by a fixed offset; the rule table then forces identical writes and moves.
struct TraceEntry {
  int32_t state;
  uint8_t read;
  int64_t pos;
};

struct Trigger {
  int64_t pos = 0;
  int64_t step = -1;
};

// Candidate motif: steps [t0, t0+T) allegedly replay at [t1, t1+T) shifted
// by p1 - p0. Verified entry by entry as the second window executes.
struct Pending {
  bool active = false;
  uint64_t t0 = 0;
  uint64_t t1 = 0;
  uint64_t len = 0;
  int64_t p0 = 0;
  int64_t p1 = 0;
};

struct Snapshot {
  int state = 0;
  int64_t pos = 0;
  Tape tape;
};

// Reused across calls; enumeration sweeps run millions of machines per
// thread and must not reallocate per machine.
struct Runner {
  HashedTape tape;
  std::vector<TraceEntry> ring;
  std::vector<Trigger> triggers;  // 2 * state_count, left side first
  Snapshot tortoise;
};

thread_local Runner tls_runner;

RunOutcome finish_halted(const HashedTape& tape, uint64_t steps,
                         uint64_t visited) {
  RunOutcome out;
  out.kind = RunOutcome::Kind::Halted;
  out.steps = steps;
  out.visited = visited;
  int64_t lo = 0, hi = 0;
  if (tape.tape().span(lo, hi)) {
    out.output.reserve(static_cast<size_t>(hi - lo + 1));
    for (int64_t p = lo; p <= hi; ++p) {
      Sym s = static_cast<Sym>(tape.read(p));
      if (s == Sym::One) ++out.ones;
      out.output.push_back(sym_char(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Growth certifier.
//
// Cycle detection and the motif prover both need something about the run to
// repeat exactly. Machines that shuttle between the two ends of a growing
// pattern (each sweep one cell longer than the last) repeat nothing, yet
// clearly never halt. For those, when the budget runs out, we guess a
// repeated word w in the final tape, replace its repeat count by a symbolic
// N, and re-simulate the machine on the whole family of tapes at once:
//
//   - crossing the block w^N takes one "macro" step, justified by running
//     the machine over a single isolated instance of w and checking it
//     leaves at the far side in the entry state without backing out;
//   - every other step peels or writes one concrete cell, which acts the
//     same way in every member of the family.
//
// If some configuration family recurs with the symbolic count increased by
// d >= 1, then C(N) leads to C(N+d) for every N large enough, the actual
// run has already reached the first C, and the machine provably never
// halts. The head keeps escaping into blank territory, so the certificate
// is reported as BlankRunaway, with the net growth in cells per round as
// its period.
//
// Everything here is guess-and-verify: a wrong guess fails the checks and
// costs a bounded amount of work, never a wrong verdict.

constexpr size_t kGrowthMaxItems = 256;
constexpr int kGrowthMaxSteps = 2048;
constexpr size_t kGrowthMaxCandidates = 8;
constexpr int64_t kGrowthMaxSpan = 8192;
constexpr size_t kGrowthMaxFlat = 65536;

struct SymExp {
  bool symbolic = false;  // repeat count is N + off rather than off
  int64_t off = 0;
};

// A block of cells: word repeated exp times. Words use the '_'/'0'/'1'
// display alphabet.
struct SymItem {
  std::string word;
  SymExp exp;
};

// Both sides keep their head-adjacent item at back().
using SymSide = std::vector<SymItem>;

// The head sits between the two sides, facing the cell it will read next.
struct SymCfg {
  int state = 0;
  bool facing_right = true;
  SymSide left;       // stored leftmost..rightmost
  SymSide right_rev;  // stored rightmost..leftmost
};

// Verifies macro hops: entering one isolated instance of the word in state
// q, the head must leave at the far side still in state q, never backing
// out of the near side and never halting. Then a power of the word is
// crossed instance by identical instance, each rewritten the same way.
struct Crosser {
  const Machine& m;
  std::map<std::string, std::optional<std::string>> memo;

  const std::optional<std::string>& cross(int q, const std::string& w,
                                          bool enter_left) {
    std::string key =
        (enter_left ? 'L' : 'R') + std::to_string(q) + ':' + w;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::optional<std::string> crossed;
    std::string buf = w;
    const int64_t len = static_cast<int64_t>(buf.size());
    int64_t p = enter_left ? 0 : len - 1;
    int state = q;
    for (int step = 0; step < 1024; ++step) {
      if (p < 0) {
        if (!enter_left && state == q) crossed = buf;
        break;
      }
      if (p >= len) {
        if (enter_left && state == q) crossed = buf;
        break;
      }
      const Rule& rule = m.rule(state, *sym_from_char(buf[static_cast<size_t>(p)]));
      if (rule.next == kHalt) break;
      buf[static_cast<size_t>(p)] = sym_char(rule.write);
      p += rule.move == Move::R ? 1 : -1;
      state = rule.next;
    }
    return memo.emplace(std::move(key), std::move(crossed)).first->second;
  }
};

// One side flattened to pre + word^(N+off) + post, or a plain literal.
struct SideNF {
  std::string pre, word, post;
  bool has_sym = false;
  int64_t off = 0;
  bool ok = true;
};

// Push the power window as far left as it goes and absorb whole copies of
// the word from both flanks, so equal families serialize equally.
void canonicalize(SideNF& nf) {
  if (!nf.has_sym) return;
  const size_t wl = nf.word.size();
  bool changed = true;
  while (changed) {
    changed = false;
    while (nf.post.size() >= wl && nf.post.compare(0, wl, nf.word) == 0) {
      nf.post.erase(0, wl);
      nf.off += 1;
      changed = true;
    }
    while (nf.pre.size() >= wl &&
           nf.pre.compare(nf.pre.size() - wl, wl, nf.word) == 0) {
      nf.pre.erase(nf.pre.size() - wl);
      nf.off += 1;
      changed = true;
    }
    if (!nf.pre.empty() && nf.pre.back() == nf.word.back()) {
      // P x (v x)^E = P (x v)^E x for the trailing character x of the word.
      nf.pre.pop_back();
      nf.post.insert(nf.post.begin(), nf.word.back());
      nf.word = nf.word.back() + nf.word.substr(0, wl - 1);
      changed = true;
    }
  }
}

struct GrowthEngine {
  const Machine& m;
  Crosser crosser;
  SymCfg cfg;
  int64_t nmin = 1;  // smallest N the symbolic walk is valid for

  explicit GrowthEngine(const Machine& machine) : m(machine), crosser{machine} {}

  SymSide& facing_side() { return cfg.facing_right ? cfg.right_rev : cfg.left; }
  SymSide& back_side() { return cfg.facing_right ? cfg.left : cfg.right_rev; }

  char adjacent_char(const SymItem& item) const {
    return cfg.facing_right ? item.word.front() : item.word.back();
  }

  void push_back_cell(char c) {
    SymSide& side = back_side();
    if (!side.empty()) {
      SymItem& b = side.back();
      if (b.word.size() == 1 && b.word[0] == c) {
        b.exp.off += 1;
        return;
      }
      if (!b.exp.symbolic && b.exp.off == 1 && b.word.size() < 64) {
        if (cfg.facing_right)
          b.word.push_back(c);
        else
          b.word.insert(b.word.begin(), c);
        return;
      }
    }
    side.push_back({std::string(1, c), {false, 1}});
  }

  void push_back_item(SymItem item) {
    SymSide& side = back_side();
    if (!side.empty()) {
      SymItem& b = side.back();
      if (b.word == item.word && !(b.exp.symbolic && item.exp.symbolic)) {
        b.exp.symbolic = b.exp.symbolic || item.exp.symbolic;
        b.exp.off += item.exp.off;
        return;
      }
    }
    side.push_back(std::move(item));
  }

  // Break the adjacent cell out of its item so it can be rewritten or
  // consumed alone. Symbolic counts shrink by one instance, which tightens
  // the family's validity threshold.
  void split_adjacent() {
    SymSide& side = facing_side();
    if (side.empty()) return;
    SymItem item = side.back();
    if (item.word.size() == 1 && !item.exp.symbolic && item.exp.off == 1)
      return;
    side.pop_back();
    char c;
    std::string rest;
    if (cfg.facing_right) {
      c = item.word.front();
      rest = item.word.substr(1);
    } else {
      c = item.word.back();
      rest = item.word.substr(0, item.word.size() - 1);
    }
    SymExp remaining = item.exp;
    remaining.off -= 1;
    if (remaining.symbolic) {
      nmin = std::max(nmin, 1 - remaining.off);
      side.push_back({item.word, remaining});
    } else if (remaining.off >= 1) {
      side.push_back({item.word, remaining});
    }
    if (!rest.empty()) side.push_back({rest, {false, 1}});
    side.push_back({std::string(1, c), {false, 1}});
  }

  // One symbolic step. false = the walk left certifiable territory (a halt
  // rule fired, or bookkeeping limits were hit).
  bool step() {
    SymSide& front = facing_side();
    if (!front.empty()) {
      SymItem& item = front.back();
      if (item.exp.symbolic || item.exp.off > 1 || item.word.size() > 1) {
        const auto& crossed =
            crosser.cross(cfg.state, item.word, cfg.facing_right);
        if (crossed) {
          SymItem moved{*crossed, item.exp};
          front.pop_back();
          push_back_item(std::move(moved));
          return true;
        }
      }
    }

    char rd = front.empty() ? '_' : adjacent_char(front.back());
    const Rule& rule = m.rule(cfg.state, *sym_from_char(rd));
    if (rule.next == kHalt) return false;
    char wr = sym_char(rule.write);

    if ((rule.move == Move::R) == cfg.facing_right) {
      // Pass over the adjacent cell, leaving the written value behind.
      if (!front.empty()) {
        split_adjacent();
        front.pop_back();
      }
      push_back_cell(wr);
    } else {
      // Turn around on the spot.
      if (front.empty()) {
        front.push_back({std::string(1, wr), {false, 1}});
      } else {
        split_adjacent();
        front.back().word[0] = wr;
      }
      cfg.facing_right = !cfg.facing_right;
    }
    cfg.state = rule.next;
    return cfg.left.size() + cfg.right_rev.size() <= kGrowthMaxItems;
  }

  SideNF normalize(const SymSide& side, bool reversed) const {
    SideNF nf;
    std::string* cur = &nf.pre;
    auto emit = [&](const SymItem& item) {
      if (item.exp.symbolic) {
        if (nf.has_sym) {
          nf.ok = false;  // single-variable engine
          return;
        }
        nf.has_sym = true;
        nf.word = item.word;
        nf.off = item.exp.off;
        cur = &nf.post;
        return;
      }
      for (int64_t k = 0; k < item.exp.off && nf.ok; ++k) {
        cur->append(item.word);
        if (cur->size() > kGrowthMaxFlat) nf.ok = false;
      }
    };
    if (reversed) {
      for (auto it = side.rbegin(); it != side.rend() && nf.ok; ++it) emit(*it);
    } else {
      for (auto it = side.begin(); it != side.end() && nf.ok; ++it) emit(*it);
    }
    if (nf.ok) canonicalize(nf);
    return nf;
  }

  // Canonical serialization of the configuration family with the symbolic
  // offset factored out; the offset comes back separately.
  bool frontier_key(std::string* key, int64_t* off) const {
    SideNF lnf = normalize(cfg.left, false);
    SideNF rnf = normalize(cfg.right_rev, true);
    if (!lnf.ok || !rnf.ok) return false;
    if (lnf.has_sym == rnf.has_sym) return false;
    *off = lnf.has_sym ? lnf.off : rnf.off;
    *key = std::to_string(cfg.state);
    key->push_back(cfg.facing_right ? '>' : '<');
    for (const SideNF* nf : {&lnf, &rnf}) {
      key->push_back('|');
      key->append(nf->pre);
      if (nf->has_sym) {
        key->push_back('[');
        key->append(nf->word);
        key->push_back(']');
      }
      key->append(nf->post);
    }
    return true;
  }
};

// Structural last resort: a machine cannot halt if no halt rule is
// reachable. Reachable states and symbols are over-approximated by closure
// from the start state and the input alphabet under the rules' writes, so a
// true verdict here is a proof.
bool halt_unreachable(const Machine& m, const BitString& input) {
  std::vector<bool> sym_seen(3, false);
  std::vector<bool> state_seen(static_cast<size_t>(m.state_count()), false);
  sym_seen[static_cast<size_t>(Sym::Blank)] = true;
  for (char c : input) sym_seen[static_cast<size_t>(*sym_from_char(c))] = true;
  state_seen[static_cast<size_t>(m.start)] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int q = 0; q < m.state_count(); ++q) {
      if (!state_seen[static_cast<size_t>(q)]) continue;
      for (int s = 0; s < 3; ++s) {
        if (!sym_seen[static_cast<size_t>(s)]) continue;
        const Rule& rule = m.rule(q, static_cast<Sym>(s));
        if (rule.next == kHalt) return false;
        if (!sym_seen[static_cast<size_t>(rule.write)]) {
          sym_seen[static_cast<size_t>(rule.write)] = true;
          grew = true;
        }
        if (!state_seen[static_cast<size_t>(rule.next)]) {
          state_seen[static_cast<size_t>(rule.next)] = true;
          grew = true;
        }
      }
    }
  }
  return true;
}

std::optional<RunOutcome> try_growth(const Machine& m, int state, int64_t pos,
                                     const Tape& tape, uint64_t steps_done,
                                     uint64_t visited) {
  int64_t lo = 0, hi = 0;
  if (!tape.span(lo, hi)) return std::nullopt;
  lo = std::min(lo, pos);
  hi = std::max(hi, pos);
  if (hi - lo + 1 > kGrowthMaxSpan) return std::nullopt;

  std::string cells;
  cells.reserve(static_cast<size_t>(hi - lo + 1));
  for (int64_t p = lo; p <= hi; ++p)
    cells.push_back(sym_char(static_cast<Sym>(tape.read(p))));
  const size_t hp = static_cast<size_t>(pos - lo);

  // Candidate blocks: maximal runs w^e of a primitive word, e >= 3, not
  // straddling the head (straddled runs contribute their one-sided parts).
  struct Cand {
    size_t start, len, reps;
  };
  std::vector<Cand> cands;
  auto add = [&](size_t i, size_t l, size_t e) {
    if (e >= 3) cands.push_back({i, l, e});
  };
  for (size_t l = 1; l <= 6; ++l) {
    for (size_t i = 0; i + 3 * l <= cells.size(); ++i) {
      if (i > 0 && cells[i - 1] == cells[i + l - 1]) continue;  // extends left
      std::string w = cells.substr(i, l);
      if (l > 1 && (w + w).find(w, 1) != l) continue;  // not primitive
      size_t e = 1;
      while (i + (e + 1) * l <= cells.size() &&
             cells.compare(i + e * l, l, cells, i, l) == 0)
        ++e;
      if (e < 3) continue;
      size_t b = i + e * l;
      if (b <= hp || i >= hp) {
        add(i, l, e);
      } else {
        if (hp > i) add(i, l, (hp - i) / l);
        size_t skip = (hp - i + l - 1) / l;
        if (e > skip) add(i + skip * l, l, e - skip);
      }
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.reps * a.len > b.reps * b.len;
  });
  if (cands.size() > kGrowthMaxCandidates) cands.resize(kGrowthMaxCandidates);

  for (const Cand& cand : cands) {
    GrowthEngine eng(m);
    eng.cfg.state = state;
    eng.cfg.facing_right = true;

    auto literal = [&](size_t from, size_t to) -> std::optional<SymItem> {
      if (from >= to) return std::nullopt;
      return SymItem{cells.substr(from, to - from), {false, 1}};
    };
    SymItem block{cells.substr(cand.start, cand.len), {true, 0}};
    size_t bend = cand.start + cand.reps * cand.len;
    if (cand.start >= hp) {
      if (auto item = literal(0, hp)) eng.cfg.left.push_back(*item);
      if (auto item = literal(bend, cells.size()))
        eng.cfg.right_rev.push_back(*item);
      eng.cfg.right_rev.push_back(block);
      if (auto item = literal(hp, cand.start))
        eng.cfg.right_rev.push_back(*item);
    } else {
      if (auto item = literal(0, cand.start)) eng.cfg.left.push_back(*item);
      eng.cfg.left.push_back(block);
      if (auto item = literal(bend, hp)) eng.cfg.left.push_back(*item);
      if (auto item = literal(hp, cells.size()))
        eng.cfg.right_rev.push_back(*item);
    }

    std::map<std::string, int64_t> seen;
    for (int s = 0; s < kGrowthMaxSteps; ++s) {
      if (eng.cfg.left.empty() || eng.cfg.right_rev.empty()) {
        std::string key;
        int64_t off = 0;
        if (eng.frontier_key(&key, &off)) {
          auto [it, fresh] = seen.try_emplace(std::move(key), off);
          if (!fresh) {
            int64_t d = off - it->second;
            if (d == 0) break;  // exact symbolic cycle; no growth will come
            if (d >= 1 && static_cast<int64_t>(cand.reps) >= eng.nmin) {
              RunOutcome out;
              out.kind = RunOutcome::Kind::ProvenNonHalting;
              out.certificate = RunOutcome::Certificate::BlankRunaway;
              out.period = static_cast<uint64_t>(d) * cand.len;
              out.steps = steps_done;
              out.visited = visited;
              return out;
            }
          }
        }
      }
      if (!eng.step()) break;
    }
  }
  return std::nullopt;
}

}  // namespace

RunOutcome run(const Machine& m, const BitString& input, uint64_t budget,
               const RunOptions& opt) {
  if (auto err = validate(m)) {
    throw std::invalid_argument("run: " + *err);
  }
  if (!is_bit_string(input)) {
    throw std::invalid_argument("run: input must consist of 0 and 1");
  }
  if (budget == 0) {
    throw std::invalid_argument("run: budget must be positive");
  }

  Runner& r = tls_runner;
  r.tape.clear();
  for (size_t i = 0; i < input.size(); ++i) {
    r.tape.write(static_cast<int64_t>(i),
                 static_cast<uint8_t>(input[i] == '1' ? Sym::One : Sym::Zero));
  }

  const int n = m.state_count();
  int state = m.start;
  int64_t pos = 0;

  // Input cells count as occupied ground for the runaway prover: a record
  // position must lie beyond them before the head can be reading fresh blank.
  const int64_t input_lo = input.empty() ? std::numeric_limits<int64_t>::max()
                                         : 0;
  const int64_t input_hi = input.empty() ? std::numeric_limits<int64_t>::min()
                                         : static_cast<int64_t>(input.size()) -
                                               1;

  int64_t min_vis = std::numeric_limits<int64_t>::max();
  int64_t max_vis = std::numeric_limits<int64_t>::min();

  const uint64_t cap =
      std::max<uint64_t>(1, std::min<uint64_t>(opt.prover_window, budget));
  r.ring.clear();
  if (r.ring.capacity() < cap) r.ring.reserve(cap);
  r.triggers.assign(static_cast<size_t>(2 * n), Trigger{});
  Pending pending;

  // Brent: compare the current configuration against a snapshot taken at the
  // last power-of-two step; a match at distance lam proves a cycle of exactly
  // lam steps, since all shorter distances from the snapshot were tested.
  r.tortoise.state = state;
  r.tortoise.pos = pos;
  r.tortoise.tape = r.tape.tape();
  uint64_t tortoise_hash = config_hash(r.tape, state, pos);
  uint64_t power = 1;
  uint64_t lam = 1;

  auto visited_count = [&]() -> uint64_t {
    return static_cast<uint64_t>(max_vis - min_vis + 1);
  };

  for (uint64_t t = 0; t < budget; ++t) {
    // Runaway triggers fire on strict head records into untouched blank
    // territory; the two sides are tracked per state independently.
    if (pos > max_vis && pos > input_hi) {
      Trigger& prev = r.triggers[static_cast<size_t>(n + state)];
      if (prev.step >= 0 && !pending.active) {
        uint64_t len = static_cast<uint64_t>(t) - static_cast<uint64_t>(prev.step);
        if (len < cap) {
          pending = {true, static_cast<uint64_t>(prev.step), t, len, prev.pos,
                     pos};
        }
      }
      prev = {pos, static_cast<int64_t>(t)};
    }
    if (pos < min_vis && pos < input_lo) {
      Trigger& prev = r.triggers[static_cast<size_t>(state)];
      if (prev.step >= 0 && !pending.active) {
        uint64_t len = static_cast<uint64_t>(t) - static_cast<uint64_t>(prev.step);
        if (len < cap) {
          pending = {true, static_cast<uint64_t>(prev.step), t, len, prev.pos,
                     pos};
        }
      }
      prev = {pos, static_cast<int64_t>(t)};
    }
    max_vis = std::max(max_vis, pos);
    min_vis = std::min(min_vis, pos);

    const uint8_t rd = r.tape.read(pos);
    const Rule& rule = m.rule(state, static_cast<Sym>(rd));

    if (rule.next == kHalt) {
      // The final move still happens, but the cell it lands on is never
      // scanned, so it does not count as visited.
      r.tape.write(pos, static_cast<uint8_t>(rule.write));
      pos += rule.move == Move::R ? 1 : -1;
      return finish_halted(r.tape, t + 1, visited_count());
    }

    TraceEntry entry{state, rd, pos};
    if (r.ring.size() < cap) {
      r.ring.push_back(entry);
    } else {
      r.ring[t % cap] = entry;
    }

    if (pending.active) {
      uint64_t j = t - pending.t1;
      const TraceEntry& ref = r.ring[(pending.t0 + j) % cap];
      bool match = ref.state == entry.state && ref.read == entry.read &&
                   entry.pos - pending.p1 == ref.pos - pending.p0;
      if (!match) {
        pending.active = false;
      } else if (j + 1 == pending.len) {
        RunOutcome out;
        out.kind = RunOutcome::Kind::ProvenNonHalting;
        out.certificate = RunOutcome::Certificate::BlankRunaway;
        out.period = pending.len;
        out.steps = t;
        out.visited = visited_count();
        return out;
      }
    }

    r.tape.write(pos, static_cast<uint8_t>(rule.write));
    pos += rule.move == Move::R ? 1 : -1;
    state = rule.next;

    uint64_t h = config_hash(r.tape, state, pos);
    if (h == tortoise_hash && state == r.tortoise.state &&
        pos == r.tortoise.pos && r.tape.tape() == r.tortoise.tape) {
      RunOutcome out;
      out.kind = RunOutcome::Kind::ProvenNonHalting;
      out.certificate = RunOutcome::Certificate::ExactCycle;
      out.period = lam;
      out.steps = t + 1;
      out.visited = visited_count();
      return out;
    }
    if (lam == power) {
      r.tortoise.state = state;
      r.tortoise.pos = pos;
      r.tortoise.tape = r.tape.tape();
      tortoise_hash = h;
      power <<= 1;
      lam = 0;
    }
    ++lam;
  }

  if (auto grown =
          try_growth(m, state, pos, r.tape.tape(), budget, visited_count()))
    return *grown;

  RunOutcome out;
  if (halt_unreachable(m, input)) {
    out.kind = RunOutcome::Kind::ProvenNonHalting;
    out.certificate = RunOutcome::Certificate::BlankRunaway;
    out.period = 0;
  } else {
    out.kind = RunOutcome::Kind::BudgetExceeded;
  }
  out.steps = budget;
  out.visited = visited_count();
  return out;
}

}  // namespace omegalab
