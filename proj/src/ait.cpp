#include "omegalab/ait.hpp"

#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace omegalab {
namespace {

// Sweeps enumerate every machine code up to ~(guard - envelope) bits. 40
// keeps that under the complete two-state family; a few bits more would pull
// in the three-state family and grow the walk by orders of magnitude.
constexpr uint64_t kMaxSweepLen = 40;

void check_search_params(uint64_t max_len, uint64_t budget, const char* who) {
  if (max_len > kMaxSweepLen) {
    throw std::invalid_argument(std::string(who) +
                                ": max_len exceeds desk guard 40");
  }
  if (budget == 0) {
    throw std::invalid_argument(std::string(who) +
                                ": budget must be positive");
  }
}

// Every program of length <= cap_plen, as (machine, code, program length).
template <class F>
void sweep_programs(uint64_t cap_plen, const F& f) {
  size_t max_code = 0;
  for (size_t c = 0; c <= cap_plen; ++c) {
    if (self_delimited_length(c) <= cap_plen) max_code = c;
  }
  enumerate_codes(max_code, [&](const Machine& m, const BitString& code) {
    size_t plen = self_delimited_length(code.size());
    if (plen <= cap_plen) f(m, code, plen);
  });
}

}  // namespace

Expected<RunOutcome, DecodeError> run_program(const BitString& program,
                                              uint64_t budget) {
  size_t pos = 0;
  auto code = read_self_delimit_log(program, &pos);
  if (!code) {
    return DecodeError{0, "program is not a well-formed self-delimited code"};
  }
  if (pos != program.size()) {
    return DecodeError{pos, "dangling bits after program"};
  }
  auto out = utm_run(*code, "", budget);
  if (!out.ok()) {
    // Code bits sit at the tail of the program; shift positions to match.
    size_t offset = program.size() - code->size();
    return DecodeError{offset + out.error().bit_pos, out.error().message};
  }
  return out.value();
}

ComplexityBound h_upper(const BitString& x, uint64_t max_len,
                        uint64_t budget) {
  if (!is_bit_string(x)) {
    throw std::invalid_argument("h_upper: target must consist of 0 and 1");
  }
  check_search_params(max_len, budget, "h_upper");

  ComplexityBound res;
  res.target = x;
  res.max_len = max_len;
  res.budget = budget;

  BitString best_code;
  sweep_programs(max_len, [&](const Machine& m, const BitString& code,
                              size_t plen) {
    // A worse-than-best candidate cannot become the witness; equal lengths
    // still run, a lexicographically smaller witness may hide there.
    if (res.bound && plen > *res.bound) return;
    ++res.programs_run;
    RunOutcome out = run(m, "", budget);
    if (!out.halted() || out.output != x) return;
    if (!res.bound || plen < *res.bound) {
      res.bound = plen;
      best_code = code;
    } else if (code < best_code) {
      // Same program length implies same code length, and the shared
      // envelope makes program order equal to code order.
      best_code = code;
    }
  });
  if (res.bound) res.witness = self_delimit_log(best_code);
  return res;
}

Dyadic p_u_lower(const BitString& x, uint64_t max_len, uint64_t budget) {
  if (!is_bit_string(x)) {
    throw std::invalid_argument("p_u_lower: target must consist of 0 and 1");
  }
  check_search_params(max_len, budget, "p_u_lower");

  Dyadic sum;
  sweep_programs(max_len,
                 [&](const Machine& m, const BitString&, size_t plen) {
                   RunOutcome out = run(m, "", budget);
                   if (out.halted() && out.output == x) {
                     sum += Dyadic::pow2_neg(plen);
                   }
                 });
  return sum;
}

OmegaEstimate omega_lower(uint64_t n, uint64_t budget) {
  check_search_params(n, budget, "omega_lower");

  OmegaEstimate res;
  res.n = n;
  res.budget = budget;
  if (n == 0) return res;

  std::vector<std::string> halted;
  sweep_programs(n - 1,
                 [&](const Machine& m, const BitString& code, size_t) {
                   if (run(m, "", budget).halted()) {
                     halted.push_back(self_delimit_log(code));
                   }
                 });
  auto set = PrefixFreeSet::make(std::move(halted));
  if (!set.ok()) {
    throw std::logic_error("omega_lower: program set not prefix-free");
  }
  res.halted_programs = set.value();
  res.value = kraft_sum(res.halted_programs.items());
  return res;
}

namespace {

// One Monte Carlo sample: lazily draw the bits a self-delimited program
// would occupy. Any malformed or over-long draw belongs to a cylinder
// containing no program, so it simply counts as not halted.
bool sample_halts(uint64_t sample_seed, uint64_t budget) {
  std::mt19937_64 gen(sample_seed);
  uint64_t drawn = 0;
  auto draw = [&]() -> int {
    ++drawn;
    return static_cast<int>(gen() & 1);
  };

  constexpr uint64_t kCap = 64;
  uint64_t zeros = 0;
  while (true) {
    if (drawn >= kCap) return false;
    if (draw() == 1) break;
    ++zeros;
  }
  if (drawn + zeros > kCap) return false;
  BitString numeral_bits;
  for (uint64_t i = 0; i < zeros; ++i) {
    numeral_bits.push_back(draw() ? '1' : '0');
  }
  auto len = numeral_value(numeral_bits);
  if (!len) return false;  // non-canonical length: no program in this cylinder
  if (drawn + *len > kCap) return false;
  BitString code;
  code.reserve(*len);
  for (uint64_t i = 0; i < *len; ++i) code.push_back(draw() ? '1' : '0');

  auto m = decode_machine(code);
  if (!m.ok()) return false;
  return run(m.value(), "", budget).halted();
}

}  // namespace

MonteCarloEstimate omega_montecarlo(uint64_t samples, uint64_t budget,
                                    uint64_t seed, int workers) {
  if (samples == 0) {
    throw std::invalid_argument("omega_montecarlo: samples must be positive");
  }
  if (budget == 0) {
    throw std::invalid_argument("omega_montecarlo: budget must be positive");
  }

  MonteCarloEstimate res;
  res.samples = samples;
  res.seed = seed;
  res.budget = budget;

  const uint64_t base = splitmix64(seed);
  int nworkers = worker_count(workers);
  if (samples < 4096 || nworkers < 2) {
    for (uint64_t i = 0; i < samples; ++i) {
      if (sample_halts(splitmix64(base ^ i), budget)) ++res.halted;
    }
    return res;
  }

  std::vector<uint64_t> counts(static_cast<size_t>(nworkers), 0);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(nworkers));
  for (int w = 0; w < nworkers; ++w) {
    threads.emplace_back([&, w]() {
      uint64_t local = 0;
      for (uint64_t i = static_cast<uint64_t>(w); i < samples;
           i += static_cast<uint64_t>(nworkers)) {
        if (sample_halts(splitmix64(base ^ i), budget)) ++local;
      }
      counts[static_cast<size_t>(w)] = local;
    });
  }
  for (auto& t : threads) t.join();
  for (uint64_t c : counts) res.halted += c;
  return res;
}

DeficiencyReport randomness_deficiency(const BitString& x, uint64_t max_len,
                                       uint64_t budget) {
  DeficiencyReport rep;
  rep.search = h_upper(x, max_len, budget);
  rep.length = x.size();
  if (rep.search.bound && *rep.search.bound + 1 <= rep.length) {
    rep.compressible = true;
    rep.saved_bits = rep.length - *rep.search.bound;
  }
  return rep;
}

BitString pair_encode(const BitString& x, const BitString& y) {
  if (!is_bit_string(x) || !is_bit_string(y)) {
    throw std::invalid_argument("pair_encode: arguments must consist of 0 and 1");
  }
  return self_delimit_log(x) + y;
}

}  // namespace omegalab
