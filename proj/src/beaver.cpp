#include "omegalab/beaver.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "omegalab/prefix.hpp"
#include "omegalab/universal.hpp"
#include "omegalab/util.hpp"

namespace omegalab {
namespace {

void check_n(int n) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("beaver: state count must be in [1, 4]");
  }
}

// Row of the classification database, compact enough to hold a full class.
struct Row {
  uint64_t index = 0;
  uint32_t steps = 0;
  uint32_t ones = 0;
  uint32_t period = 0;
  uint8_t verdict = 0;  // 0 halted, 1 cycle, 2 runaway, 3 budget
};

uint8_t verdict_of(const RunOutcome& out) {
  switch (out.kind) {
    case RunOutcome::Kind::Halted: return 0;
    case RunOutcome::Kind::ProvenNonHalting:
      return out.certificate == RunOutcome::Certificate::ExactCycle ? 1 : 2;
    default: return 3;
  }
}

const char* verdict_name(uint8_t v) {
  switch (v) {
    case 0: return "halted";
    case 1: return "cycle";
    case 2: return "runaway";
    default: return "budget";
  }
}

Row make_row(uint64_t index, const RunOutcome& out) {
  Row r;
  r.index = index;
  r.verdict = verdict_of(out);
  r.steps = static_cast<uint32_t>(out.steps);
  r.ones = static_cast<uint32_t>(out.ones);
  r.period = static_cast<uint32_t>(out.period);
  return r;
}

void append_row_text(std::string& buf, const Row& r) {
  buf += std::to_string(r.index);
  buf += ' ';
  buf += verdict_name(r.verdict);
  buf += ' ';
  buf += std::to_string(r.steps);
  buf += ' ';
  buf += std::to_string(r.ones);
  buf += ' ';
  if (r.verdict == 1 || r.verdict == 2) {
    buf += std::to_string(r.period);
  } else {
    buf += '-';
  }
  buf += '\n';
}

bool parse_row(const std::string& line, uint64_t count, Row& r) {
  std::istringstream in(line);
  std::string verdict, cert;
  uint64_t steps = 0, ones = 0;
  if (!(in >> r.index >> verdict >> steps >> ones >> cert)) return false;
  std::string rest;
  if (in >> rest) return false;
  if (r.index >= count) return false;
  r.steps = static_cast<uint32_t>(steps);
  r.ones = static_cast<uint32_t>(ones);
  if (verdict == "halted") {
    r.verdict = 0;
  } else if (verdict == "cycle") {
    r.verdict = 1;
  } else if (verdict == "runaway") {
    r.verdict = 2;
  } else if (verdict == "budget") {
    r.verdict = 3;
  } else {
    return false;
  }
  if (r.verdict == 1 || r.verdict == 2) {
    try {
      r.period = static_cast<uint32_t>(std::stoull(cert));
    } catch (...) {
      return false;
    }
  } else if (cert != "-") {
    return false;
  }
  return true;
}

BeaverReport aggregate(int n, uint64_t budget, const std::vector<Row>& rows) {
  BeaverReport rep;
  rep.n = n;
  rep.budget = budget;
  bool any_halted = false;
  for (const Row& r : rows) {
    switch (r.verdict) {
      case 0: {
        ++rep.halted;
        if (!any_halted || r.ones > rep.sigma_ones) {
          rep.sigma_ones = r.ones;
          rep.ones_champion = r.index;
        }
        if (!any_halted || r.steps > rep.s_steps) {
          rep.s_steps = r.steps;
          rep.steps_champion = r.index;
        }
        any_halted = true;
        break;
      }
      case 1: ++rep.cycle; break;
      case 2: ++rep.runaway; break;
      default: ++rep.unresolved; break;
    }
  }
  return rep;
}

// Complete final database: header match and one row per machine.
std::optional<std::vector<Row>> load_final_db(const std::string& path,
                                              const std::string& header,
                                              uint64_t count) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != header) return std::nullopt;
  std::vector<Row> rows;
  rows.reserve(count);
  std::vector<bool> seen(count, false);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r;
    if (!parse_row(line, count, r) || seen[r.index]) return std::nullopt;
    seen[r.index] = true;
    rows.push_back(r);
  }
  if (rows.size() != count) return std::nullopt;
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.index < b.index; });
  return rows;
}

// Partial temp database; malformed lines (a torn final write) end the scan.
void load_temp_db(const std::string& path, const std::string& header,
                  uint64_t count, std::vector<Row>& rows,
                  std::vector<bool>& done) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  if (!std::getline(in, line) || line != header) return;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r;
    if (!parse_row(line, count, r)) break;
    if (done[r.index]) continue;
    done[r.index] = true;
    rows.push_back(r);
  }
}

}  // namespace

uint64_t class_size(int n) {
  check_n(n);
  uint64_t base = static_cast<uint64_t>(4 * n + 4);
  uint64_t size = 1;
  for (int i = 0; i < 2 * n; ++i) size *= base;
  return size;
}

namespace {

const Rule kDeadZeroRule{Sym::Zero, Move::R, kHalt};

void fill_from_index(int n, uint64_t index, Machine& m) {
  const uint64_t radix = static_cast<uint64_t>(4 * (n + 1));
  for (int slot = 2 * n - 1; slot >= 0; --slot) {
    uint64_t digit = index % radix;
    index /= radix;
    uint64_t target = digit % static_cast<uint64_t>(n + 1);
    uint64_t wm = digit / static_cast<uint64_t>(n + 1);
    Rule r;
    r.write = (wm >> 1) ? Sym::One : Sym::Blank;
    r.move = (wm & 1) ? Move::R : Move::L;
    r.next = target == 0 ? kHalt : static_cast<int>(target) - 1;
    int state = slot / 2;
    m.rule(state, slot % 2 == 0 ? Sym::Blank : Sym::One) = r;
  }
}

}  // namespace

Machine machine_from_index(int n, uint64_t index) {
  uint64_t count = class_size(n);
  if (index >= count) {
    throw std::invalid_argument("machine_from_index: index out of range");
  }
  Machine m = blank_machine(n);
  for (int q = 0; q < n; ++q) m.rule(q, Sym::Zero) = kDeadZeroRule;
  fill_from_index(n, index, m);
  return m;
}

void enumerate_class(
    int n, const std::function<void(uint64_t, const Machine&)>& visit) {
  uint64_t count = class_size(n);
  Machine m = blank_machine(n);
  for (int q = 0; q < n; ++q) m.rule(q, Sym::Zero) = kDeadZeroRule;
  for (uint64_t i = 0; i < count; ++i) {
    fill_from_index(n, i, m);
    visit(i, m);
  }
}

RunOutcome classify(const Machine& m, uint64_t budget) {
  return run(m, "", budget);
}

BeaverReport sigma(int n, uint64_t budget, const std::string& db_path,
                   int workers) {
  uint64_t count = class_size(n);
  if (budget == 0) {
    throw std::invalid_argument("sigma: budget must be positive");
  }
  const std::string header =
      "# bbdb n=" + std::to_string(n) + " budget=" + std::to_string(budget);
  const bool with_db = !db_path.empty();
  const std::string temp_path = db_path + ".tmp";

  if (with_db) {
    if (auto rows = load_final_db(db_path, header, count)) {
      return aggregate(n, budget, *rows);
    }
  }

  std::vector<Row> rows;
  std::vector<bool> done;
  std::ofstream temp;
  std::mutex temp_mu;

  if (with_db) {
    done.assign(count, false);
    load_temp_db(temp_path, header, count, rows, done);
    if (rows.empty()) {
      temp.open(temp_path, std::ios::trunc);
      temp << header << '\n';
    } else {
      temp.open(temp_path, std::ios::app);
    }
    if (!temp) {
      throw std::runtime_error("sigma: cannot open " + temp_path);
    }
  }

  int req = worker_count(workers);
  uint64_t w64 = std::min<uint64_t>(static_cast<uint64_t>(req), count);
  const int nworkers = static_cast<int>(std::max<uint64_t>(1, w64));
  const uint64_t chunk = (count + nworkers - 1) / nworkers;

  struct Agg {
    bool any = false;
    uint64_t max_ones = 0, ones_arg = 0, max_steps = 0, steps_arg = 0;
    uint64_t halted = 0, cycle = 0, runaway = 0, unresolved = 0;
  };
  std::vector<Agg> aggs(static_cast<size_t>(nworkers));
  std::vector<std::vector<Row>> fresh(static_cast<size_t>(nworkers));

  auto work = [&](int w) {
    uint64_t lo = static_cast<uint64_t>(w) * chunk;
    uint64_t hi = std::min(lo + chunk, count);
    Agg& agg = aggs[static_cast<size_t>(w)];
    Machine m = blank_machine(n);
    for (int q = 0; q < n; ++q) m.rule(q, Sym::Zero) = kDeadZeroRule;
    std::string buf;
    for (uint64_t i = lo; i < hi; ++i) {
      if (with_db && done[i]) continue;
      fill_from_index(n, i, m);
      RunOutcome out = run(m, "", budget);
      switch (verdict_of(out)) {
        case 0:
          ++agg.halted;
          if (!agg.any || out.ones > agg.max_ones) {
            agg.max_ones = out.ones;
            agg.ones_arg = i;
          }
          if (!agg.any || out.steps > agg.max_steps) {
            agg.max_steps = out.steps;
            agg.steps_arg = i;
          }
          agg.any = true;
          break;
        case 1: ++agg.cycle; break;
        case 2: ++agg.runaway; break;
        default: ++agg.unresolved; break;
      }
      if (with_db) {
        Row r = make_row(i, out);
        fresh[static_cast<size_t>(w)].push_back(r);
        append_row_text(buf, r);
        if (buf.size() >= 1 << 16) {
          std::lock_guard<std::mutex> lock(temp_mu);
          temp << buf;
          temp.flush();
          buf.clear();
        }
      }
    }
    if (!buf.empty()) {
      std::lock_guard<std::mutex> lock(temp_mu);
      temp << buf;
      temp.flush();
    }
  };

  if (nworkers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  if (!with_db) {
    BeaverReport rep;
    rep.n = n;
    rep.budget = budget;
    bool any = false;
    for (const Agg& a : aggs) {
      rep.halted += a.halted;
      rep.cycle += a.cycle;
      rep.runaway += a.runaway;
      rep.unresolved += a.unresolved;
      if (!a.any) continue;
      if (!any || a.max_ones > rep.sigma_ones) {
        rep.sigma_ones = a.max_ones;
        rep.ones_champion = a.ones_arg;
      }
      if (!any || a.max_steps > rep.s_steps) {
        rep.s_steps = a.max_steps;
        rep.steps_champion = a.steps_arg;
      }
      any = true;
    }
    return rep;
  }

  for (auto& f : fresh) {
    rows.insert(rows.end(), f.begin(), f.end());
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.index < b.index; });
  if (rows.size() != count) {
    throw std::logic_error("sigma: classification incomplete after run");
  }

  temp.close();
  const std::string fin_path = db_path + ".fin";
  {
    std::ofstream fin(fin_path, std::ios::trunc);
    if (!fin) throw std::runtime_error("sigma: cannot open " + fin_path);
    fin << header << '\n';
    std::string buf;
    for (const Row& r : rows) {
      append_row_text(buf, r);
      if (buf.size() >= 1 << 16) {
        fin << buf;
        buf.clear();
      }
    }
    fin << buf;
  }
  std::filesystem::rename(fin_path, db_path);
  std::remove(temp_path.c_str());

  return aggregate(n, budget, rows);
}

SigmaProgramResult sigma_program(uint64_t max_len, uint64_t budget) {
  if (max_len > 40) {
    throw std::invalid_argument("sigma_program: max_len exceeds desk guard 40");
  }
  if (budget == 0) {
    throw std::invalid_argument("sigma_program: budget must be positive");
  }

  size_t max_code = 0;
  for (size_t c = 0; c <= max_len; ++c) {
    if (self_delimited_length(c) <= max_len) max_code = c;
  }

  SigmaProgramResult res;
  enumerate_codes(max_code, [&](const Machine& m, const BitString& code) {
    if (self_delimited_length(code.size()) > max_len) return;
    ++res.programs_run;
    RunOutcome out = run(m, "", budget);
    if (!out.halted()) return;
    ++res.halted;
    if (!is_bit_string(out.output)) return;
    mpz_class v =
        out.output.empty() ? mpz_class(0) : mpz_class(out.output, 2);
    if (!res.value || v > *res.value) {
      res.value = v;
      res.witness = self_delimit_log(code);
      return;
    }
    if (v == *res.value) {
      BitString w = self_delimit_log(code);
      if (w.size() < res.witness.size() ||
          (w.size() == res.witness.size() && w < res.witness)) {
        res.witness = w;
      }
    }
  });
  return res;
}

}  // namespace omegalab
