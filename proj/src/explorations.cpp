#include "omegalab/explorations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "omegalab/util.hpp"

namespace omegalab {

BitString diagonal(const std::vector<BitString>& table) {
  BitString out;
  out.reserve(table.size());
  for (size_t i = 0; i < table.size(); ++i) {
    if (table[i].size() < i + 1)
      throw std::invalid_argument("diagonal: row " + std::to_string(i) +
                                  " is shorter than " + std::to_string(i + 1) +
                                  " bits");
    out.push_back(table[i][i] == '0' ? '1' : '0');
  }
  return out;
}

CollatzResult collatz_steps(const mpz_class& n, uint64_t budget) {
  if (n < 1) throw std::invalid_argument("collatz_steps: n must be positive");
  if (budget == 0) throw std::invalid_argument("collatz_steps: zero budget");
  CollatzResult r;
  r.peak = n;
  mpz_class v = n;
  while (v != 1) {
    if (r.steps == budget) return r;
    if (mpz_even_p(v.get_mpz_t()))
      v >>= 1;
    else {
      v *= 3;
      v += 1;
    }
    if (v > r.peak) r.peak = v;
    ++r.steps;
  }
  r.reached_one = true;
  return r;
}

namespace {

constexpr uint64_t kUnresolved = std::numeric_limits<uint64_t>::max();

struct RangeBlock {
  uint64_t lo = 0;
  std::vector<uint64_t> steps;  // full trajectory length of lo + i
  bool all_halted = true;
};

// Ascending within the block, each trajectory is simulated until it hits 1
// or a smaller member of the block whose count is already known. Values below
// the block are simulated afresh, so recorded counts do not depend on how the
// range was sharded.
void classify_block(uint64_t lo, uint64_t hi, uint64_t budget,
                    RangeBlock* out) {
  out->lo = lo;
  out->steps.assign(hi - lo + 1, kUnresolved);
  mpz_class v;
  for (uint64_t n = lo; n <= hi; ++n) {
    v = static_cast<unsigned long>(n);
    uint64_t sim = 0;
    uint64_t total = kUnresolved;
    while (true) {
      if (v == 1) {
        total = sim;
        break;
      }
      if (v.fits_ulong_p()) {
        uint64_t u = v.get_ui();
        if (u >= lo && u < n) {
          uint64_t tail = out->steps[u - lo];
          if (tail != kUnresolved) total = sim + tail;
          break;
        }
      }
      if (sim == budget) break;
      if (mpz_even_p(v.get_mpz_t()))
        v >>= 1;
      else {
        v *= 3;
        v += 1;
      }
      ++sim;
    }
    out->steps[n - lo] = total;
    if (total == kUnresolved) out->all_halted = false;
  }
}

}  // namespace

CollatzRangeReport collatz_verify_range(uint64_t lo, uint64_t hi,
                                        uint64_t budget, int workers) {
  if (lo < 1) throw std::invalid_argument("collatz range: lo must be positive");
  if (hi < lo) throw std::invalid_argument("collatz range: hi below lo");
  if (budget == 0) throw std::invalid_argument("collatz range: zero budget");

  uint64_t count = hi - lo + 1;
  uint64_t nworkers = std::min<uint64_t>(worker_count(workers), count);
  uint64_t chunk = (count + nworkers - 1) / nworkers;

  std::vector<RangeBlock> blocks(nworkers);
  std::vector<std::thread> pool;
  for (uint64_t w = 0; w < nworkers; ++w) {
    uint64_t block_lo = lo + w * chunk;
    uint64_t block_hi = std::min(hi, block_lo + chunk - 1);
    pool.emplace_back(classify_block, block_lo, block_hi, budget, &blocks[w]);
  }
  for (auto& t : pool) t.join();

  CollatzRangeReport report;
  report.all_halted = true;
  report.checked = count;
  for (const RangeBlock& b : blocks) {
    report.all_halted = report.all_halted && b.all_halted;
    for (size_t i = 0; i < b.steps.size(); ++i) {
      if (b.steps[i] == kUnresolved) continue;
      if (b.steps[i] > report.max_steps || report.argmax == 0) {
        report.max_steps = b.steps[i];
        report.argmax = b.lo + i;
      }
    }
  }
  return report;
}

BitString thue_morse(int k) {
  if (k < 0 || k > 24)
    throw std::invalid_argument("thue_morse: k must be in [0, 24]");
  BitString t = "0";
  t.reserve(size_t{1} << k);
  for (int i = 0; i < k; ++i) {
    size_t half = t.size();
    for (size_t j = 0; j < half; ++j) t.push_back(t[j] == '0' ? '1' : '0');
  }
  return t;
}

std::optional<CubeWitness> find_cube(const std::string& x) {
  size_t n = x.size();
  std::optional<CubeWitness> best;
  // For period len, run[i] = matching length of x[i..] against x[i+len..];
  // a run of at least 2*len starting at i spells the cube x[i..i+3*len).
  // Periods ascend, so on equal positions the first factor found is shortest.
  for (size_t len = 1; 3 * len <= n; ++len) {
    if (best && best->pos == 0) break;
    size_t run = 0;
    for (size_t i = n - len; i-- > 0;) {
      run = x[i] == x[i + len] ? run + 1 : 0;
      if (run >= 2 * len && (!best || i < best->pos))
        best = CubeWitness{i, x.substr(i, len)};
    }
  }
  return best;
}

RationalBounds computable_real_bounds(
    const std::function<mpz_class(const mpz_class&)>& approximator,
    const mpz_class& n) {
  if (n < 1)
    throw std::invalid_argument("computable_real_bounds: n must be positive");
  mpz_class k = approximator(n);
  RationalBounds b{mpq_class(k - 1, n), mpq_class(k + 1, n)};
  b.lo.canonicalize();
  b.hi.canonicalize();
  return b;
}

mpz_class approx_half(const mpz_class& n) { return (n + 1) / 2; }

mpz_class approx_sqrt2(const mpz_class& n) {
  // floor(sqrt(2 n^2)) = floor(sqrt(2) n), exactly.
  mpz_class k;
  mpz_sqrt(k.get_mpz_t(), mpz_class(2 * n * n).get_mpz_t());
  return k;
}

mpz_class approx_phi(const mpz_class& n) {
  // floor((1 + sqrt(5)) n / 2) = (n + floor(sqrt(5) n)) / 2, exactly:
  // the fractional parts of the two halves never sum past 1 here.
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), mpz_class(5 * n * n).get_mpz_t());
  return (n + s) / 2;
}

double scaling_nmax(const ScalingLaw& law, double ell) {
  if (law.k == 0) throw std::invalid_argument("scaling law: k must be positive");
  if (!(law.alpha > 0) || !(law.c > 0))
    throw std::invalid_argument("scaling law: alpha and c must be positive");
  if (!(ell > 0))
    throw std::invalid_argument("scaling law: feature size must be positive");
  return std::pow(law.c / std::pow(ell, law.alpha),
                  1.0 / static_cast<double>(law.k));
}

}  // namespace omegalab
