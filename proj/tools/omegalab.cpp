// omegalab: one subcommand per library operation, long flags only.
//
// Output is key = value lines (strings quoted, booleans yes/no, dyadics
// "m/2^e (~ decimal)"), except where a single payload is the whole point
// (encoded bits, decoded machine text, sequences, CSV samples). Any
// invocation with fixed flags and OMEGALAB_THREADS is byte-deterministic.
//
// Exit codes: 0 success, 1 domain error (bad flags, parse errors, guard
// violations), 2 internal invariant failure.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "CLI11.hpp"
#include "omegalab/ait.hpp"
#include "omegalab/beaver.hpp"
#include "omegalab/chaitin.hpp"
#include "omegalab/explorations.hpp"
#include "omegalab/mdl.hpp"
#include "omegalab/prefix.hpp"
#include "omegalab/profiler.hpp"
#include "omegalab/run.hpp"
#include "omegalab/universal.hpp"

namespace {

using namespace omegalab;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

Machine load_machine(const std::string& path) {
  auto parsed = parse_machine(read_file(path));
  if (!parsed.ok()) {
    throw std::invalid_argument(path + ": " + parsed.error().to_string());
  }
  return parsed.value();
}

ChaitinMachine load_cm(const std::string& path) {
  auto parsed = parse_cm(read_file(path));
  if (!parsed.ok()) {
    throw std::invalid_argument(path + ": " + parsed.error().to_string());
  }
  return parsed.value();
}

void require_bits(const std::string& s, const char* what) {
  if (!is_bit_string(s)) {
    throw std::invalid_argument(std::string(what) + " must consist of 0 and 1");
  }
}

// Machine code from --code (inline bits) or --code-file (bit text, or the
// packed byte form under --packed).
struct CodeSource {
  std::string inline_bits;
  std::string file;
  bool packed = false;
  CLI::App* cmd = nullptr;

  void attach(CLI::App* c) {
    cmd = c;
    cmd->add_option("--code", inline_bits, "machine code as 0/1 text");
    cmd->add_option("--code-file", file, "file holding the machine code");
    cmd->add_flag("--packed", packed,
                  "treat --code-file as packed bytes (length-prefixed)");
  }

  BitString fetch() const {
    bool has_inline = cmd->count("--code") > 0;
    bool has_file = cmd->count("--code-file") > 0;
    if (has_inline == has_file) {
      throw std::invalid_argument("give exactly one of --code / --code-file");
    }
    if (packed && !has_file) {
      throw std::invalid_argument("--packed requires --code-file");
    }
    if (has_inline) {
      require_bits(inline_bits, "--code");
      return inline_bits;
    }
    std::string raw = read_file(file);
    if (packed) {
      std::vector<uint8_t> bytes(raw.begin(), raw.end());
      auto unpacked = unpack_bits(bytes);
      if (!unpacked.ok()) {
        throw std::invalid_argument(file + ": " + unpacked.error().to_string());
      }
      return unpacked.value();
    }
    std::string bits;
    for (char c : raw) {
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
      bits.push_back(c);
    }
    require_bits(bits, "--code-file contents");
    return bits;
  }
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

uint64_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string(what) + ": bad count '" + s + "'");
  }
  return std::stoull(s);
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string dyadic_str(const Dyadic& d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (~ %.9g)", d.to_double());
  return d.to_string() + buf;
}

void print_outcome(const RunOutcome& o) {
  switch (o.kind) {
    case RunOutcome::Kind::Halted:
      std::printf("kind = halted\nsteps = %" PRIu64 "\nones = %" PRIu64
                  "\noutput = \"%s\"\n",
                  o.steps, o.ones, o.output.c_str());
      break;
    case RunOutcome::Kind::BudgetExceeded:
      std::printf("kind = budget\nsteps = %" PRIu64 "\n", o.steps);
      break;
    case RunOutcome::Kind::ProvenNonHalting:
      std::printf("kind = nonhalting\ncertificate = %s\nperiod = %" PRIu64
                  "\nsteps = %" PRIu64 "\n",
                  o.certificate == RunOutcome::Certificate::ExactCycle
                      ? "cycle"
                      : "runaway",
                  o.period, o.steps);
      break;
  }
  std::printf("visited = %" PRIu64 "\n", o.visited);
}

// ---------------------------------------------------------------------------

int run_cli(int argc, char** argv) {
  CLI::App app{"computability and algorithmic information workbench"};
  // run ----------------------------------------------------------------
  struct {
    std::string machine, input;
    uint64_t budget = 1000;
  } run_o;
  CLI::App* c_run = app.add_subcommand("run", "run a machine on an input");
  c_run->add_option("--machine", run_o.machine, ".mdl machine file")
      ->required();
  c_run->add_option("--input", run_o.input, "input bits (default empty)");
  c_run->add_option("--budget", run_o.budget, "step budget");

  // utm ----------------------------------------------------------------
  struct {
    CodeSource code;
    std::string input;
    uint64_t budget = 1000;
  } utm_o;
  CLI::App* c_utm =
      app.add_subcommand("utm", "run a machine given only its code");
  utm_o.code.attach(c_utm);
  c_utm->add_option("--input", utm_o.input, "input bits (default empty)");
  c_utm->add_option("--budget", utm_o.budget, "step budget");

  // encode -------------------------------------------------------------
  struct {
    std::string machine, out;
    bool packed = false;
  } enc_o;
  CLI::App* c_enc = app.add_subcommand("encode", "machine to canonical code");
  c_enc->add_option("--machine", enc_o.machine, ".mdl machine file")
      ->required();
  c_enc->add_option("--out", enc_o.out, "write the code here instead");
  c_enc->add_flag("--packed", enc_o.packed,
                  "write packed bytes (requires --out)");

  // decode -------------------------------------------------------------
  struct {
    CodeSource code;
  } dec_o;
  CLI::App* c_dec = app.add_subcommand("decode", "code back to machine text");
  dec_o.code.attach(c_dec);

  // prefix -------------------------------------------------------------
  struct {
    std::string unary, log, set, set_file;
    bool check = false, kraft = false;
  } pre_o;
  CLI::App* c_pre =
      app.add_subcommand("prefix", "self-delimiting codes and Kraft sums");
  c_pre->add_option("--unary", pre_o.unary, "emit 0^n 1 x for these bits");
  c_pre->add_option("--log", pre_o.log, "emit the logarithmic code");
  c_pre->add_flag("--check", pre_o.check, "test a set for prefix-freeness");
  c_pre->add_flag("--kraft", pre_o.kraft, "exact Kraft sum of a set");
  c_pre->add_option("--set", pre_o.set, "comma-separated bit strings");
  c_pre->add_option("--set-file", pre_o.set_file,
                    "file with one bit string per line");

  // cm-run -------------------------------------------------------------
  struct {
    std::string machine, program, work;
    uint64_t budget = 1000;
  } cm_o;
  CLI::App* c_cm =
      app.add_subcommand("cm-run", "run a two-tape prefix machine");
  c_cm->add_option("--machine", cm_o.machine, "chaitin .mdl file")->required();
  c_cm->add_option("--program", cm_o.program, "program tape bits");
  c_cm->add_option("--work", cm_o.work, "initial work tape bits");
  c_cm->add_option("--budget", cm_o.budget, "step budget");

  // h-upper ------------------------------------------------------------
  struct {
    std::string target;
    uint64_t max_len = 0, budget = 1000;
  } hu_o;
  CLI::App* c_hu =
      app.add_subcommand("h-upper", "shortest-program complexity bound");
  c_hu->add_option("--target", hu_o.target, "the string to produce")
      ->required();
  c_hu->add_option("--max-len", hu_o.max_len, "longest program swept")
      ->required();
  c_hu->add_option("--budget", hu_o.budget, "steps per program");

  // pu -----------------------------------------------------------------
  struct {
    std::string target;
    uint64_t max_len = 0, budget = 1000;
  } pu_o;
  CLI::App* c_pu =
      app.add_subcommand("pu", "universal probability lower bound");
  c_pu->add_option("--target", pu_o.target, "the string produced")->required();
  c_pu->add_option("--max-len", pu_o.max_len, "longest program swept")
      ->required();
  c_pu->add_option("--budget", pu_o.budget, "steps per program");

  // omega --------------------------------------------------------------
  struct {
    uint64_t max_len = 0, budget = 1000;
  } om_o;
  CLI::App* c_om =
      app.add_subcommand("omega", "halting probability lower bound");
  c_om->add_option("--max-len", om_o.max_len,
                   "sweep programs strictly shorter than this")
      ->required();
  c_om->add_option("--budget", om_o.budget, "steps per program");

  // omega-mc -----------------------------------------------------------
  struct {
    uint64_t samples = 0, budget = 1000, seed = 0;
  } mc_o;
  CLI::App* c_mc =
      app.add_subcommand("omega-mc", "Monte Carlo halting probability");
  c_mc->add_option("--samples", mc_o.samples, "programs to draw")->required();
  c_mc->add_option("--budget", mc_o.budget, "steps per program");
  c_mc->add_option("--seed", mc_o.seed, "generator seed");

  // beaver -------------------------------------------------------------
  struct {
    int states = 0;
    uint64_t budget = 1000;
    std::string db;
  } bv_o;
  CLI::App* c_bv =
      app.add_subcommand("beaver", "classify a full busy-beaver class");
  c_bv->add_option("--states", bv_o.states, "state count n")->required();
  c_bv->add_option("--budget", bv_o.budget, "steps per machine");
  c_bv->add_option("--db", bv_o.db, "classification database path (.bbdb)");

  // sigma-n ------------------------------------------------------------
  struct {
    uint64_t max_len = 0, budget = 1000;
  } sn_o;
  CLI::App* c_sn = app.add_subcommand(
      "sigma-n", "largest integer named by a bounded-size program");
  c_sn->add_option("--max-len", sn_o.max_len, "longest program swept")
      ->required();
  c_sn->add_option("--budget", sn_o.budget, "steps per program");

  // diagonal -----------------------------------------------------------
  struct {
    std::string table, rows;
  } dg_o;
  CLI::App* c_dg =
      app.add_subcommand("diagonal", "flipped diagonal of a bit table");
  c_dg->add_option("--table", dg_o.table, "file with one bit row per line");
  c_dg->add_option("--rows", dg_o.rows, "comma-separated bit rows");

  // collatz ------------------------------------------------------------
  struct {
    std::string n;
    uint64_t budget = 1000000;
  } cz_o;
  CLI::App* c_cz = app.add_subcommand("collatz", "one Collatz trajectory");
  c_cz->add_option("--n", cz_o.n, "starting value (unbounded)")->required();
  c_cz->add_option("--budget", cz_o.budget, "iteration budget");

  // collatz-range ------------------------------------------------------
  struct {
    uint64_t lo = 0, hi = 0, budget = 1000;
  } cr_o;
  CLI::App* c_cr =
      app.add_subcommand("collatz-range", "verify a whole Collatz range");
  c_cr->add_option("--lo", cr_o.lo, "range start")->required();
  c_cr->add_option("--hi", cr_o.hi, "range end, inclusive")->required();
  c_cr->add_option("--budget", cr_o.budget, "fresh iterations per value");

  // thue-morse ---------------------------------------------------------
  struct {
    int k = 0;
  } tm_o;
  CLI::App* c_tm = app.add_subcommand("thue-morse", "k-th morphism iterate");
  c_tm->add_option("--k", tm_o.k, "iterations (output 2^k bits)")->required();

  // cube-free ----------------------------------------------------------
  struct {
    std::string x;
  } cf_o;
  CLI::App* c_cf =
      app.add_subcommand("cube-free", "search a string for a cubed factor");
  c_cf->add_option("--x", cf_o.x, "the string to scan")->required();

  // real-bounds --------------------------------------------------------
  struct {
    std::string real, n;
  } rb_o;
  CLI::App* c_rb = app.add_subcommand(
      "real-bounds", "rational bracket around a computable real");
  c_rb->add_option("--real", rb_o.real, "one of: half, sqrt2, phi")
      ->required();
  c_rb->add_option("--n", rb_o.n, "approximation denominator")->required();

  // scaling ------------------------------------------------------------
  struct {
    uint64_t k = 0;
    double alpha = 0, c = 0, ell = 0;
  } sc_o;
  CLI::App* c_sc =
      app.add_subcommand("scaling", "largest feasible size N under N^k ell^alpha = c");
  c_sc->add_option("--k", sc_o.k, "algorithm exponent")->required();
  c_sc->add_option("--alpha", sc_o.alpha, "technology exponent")->required();
  c_sc->add_option("--c", sc_o.c, "constant")->required();
  c_sc->add_option("--ell", sc_o.ell, "feature size")->required();

  // profile ------------------------------------------------------------
  struct {
    std::string machine, family = "unary", sizes, fit;
    uint64_t budget = 1000;
  } pf_o;
  CLI::App* c_pf =
      app.add_subcommand("profile", "measure t(N), s(N) over an input family");
  c_pf->add_option("--machine", pf_o.machine, ".mdl machine file")->required();
  c_pf->add_option("--family", pf_o.family, "unary or binary-counter");
  c_pf->add_option("--sizes", pf_o.sizes, "comma-separated input sizes")
      ->required();
  c_pf->add_option("--budget", pf_o.budget, "steps per size");
  c_pf->add_option("--fit", pf_o.fit, "also fit a power law: t or s");

  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11's own exit codes collapse onto the documented 0 / 1 split.
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (c_run->parsed()) {
    require_bits(run_o.input, "--input");
    print_outcome(run(load_machine(run_o.machine), run_o.input, run_o.budget));
    return 0;
  }

  if (c_utm->parsed()) {
    require_bits(utm_o.input, "--input");
    auto out = utm_run(utm_o.code.fetch(), utm_o.input, utm_o.budget);
    if (!out.ok()) throw std::invalid_argument(out.error().to_string());
    print_outcome(out.value());
    return 0;
  }

  if (c_enc->parsed()) {
    BitString code = encode_machine(load_machine(enc_o.machine));
    if (enc_o.packed && enc_o.out.empty()) {
      throw std::invalid_argument("--packed requires --out");
    }
    if (enc_o.out.empty()) {
      std::printf("%s\n", code.c_str());
    } else if (enc_o.packed) {
      auto bytes = pack_bits(code);
      write_file(enc_o.out, std::string(bytes.begin(), bytes.end()));
    } else {
      write_file(enc_o.out, code + "\n");
    }
    return 0;
  }

  if (c_dec->parsed()) {
    auto decoded = decode_machine(dec_o.code.fetch());
    if (!decoded.ok()) throw std::invalid_argument(decoded.error().to_string());
    std::printf("%s", render_machine(decoded.value()).c_str());
    return 0;
  }

  if (c_pre->parsed()) {
    bool has_unary = c_pre->count("--unary") > 0;
    bool has_log = c_pre->count("--log") > 0;
    int modes = static_cast<int>(has_unary) + static_cast<int>(has_log) +
                static_cast<int>(pre_o.check) + static_cast<int>(pre_o.kraft);
    if (modes != 1) {
      throw std::invalid_argument(
          "give exactly one of --unary / --log / --check / --kraft");
    }
    if (has_unary) {
      require_bits(pre_o.unary, "--unary");
      std::printf("%s\n", self_delimit_unary(pre_o.unary).c_str());
      return 0;
    }
    if (has_log) {
      require_bits(pre_o.log, "--log");
      std::printf("%s\n", self_delimit_log(pre_o.log).c_str());
      return 0;
    }
    bool has_set = c_pre->count("--set") > 0;
    bool has_set_file = c_pre->count("--set-file") > 0;
    if (has_set == has_set_file) {
      throw std::invalid_argument("give exactly one of --set / --set-file");
    }
    std::vector<std::string> items;
    if (has_set) {
      items = split_csv(pre_o.set);
    } else {
      std::string line;
      std::istringstream in(read_file(pre_o.set_file));
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) items.push_back(line);
      }
    }
    for (const auto& s : items) require_bits(s, "set member");
    if (pre_o.check) {
      auto witness = prefix_violation(items);
      std::printf("prefix_free = %s\n", yesno(!witness));
      if (witness) {
        std::printf("prefix = \"%s\"\nextension = \"%s\"\n",
                    witness->prefix.c_str(), witness->extension.c_str());
      }
      return 0;
    }
    auto set = PrefixFreeSet::make(items);
    if (!set.ok()) {
      throw std::invalid_argument("set is not prefix-free: \"" +
                                  set.error().prefix + "\" extends into \"" +
                                  set.error().extension + "\"");
    }
    std::printf("kraft = %s\n",
                dyadic_str(kraft_sum(set.value().items())).c_str());
    return 0;
  }

  if (c_cm->parsed()) {
    require_bits(cm_o.program, "--program");
    require_bits(cm_o.work, "--work");
    CmOutcome out =
        run_cm(load_cm(cm_o.machine), cm_o.program, cm_o.work, cm_o.budget);
    const char* status = nullptr;
    switch (out.status) {
      case CmOutcome::Status::Halted: status = "halted"; break;
      case CmOutcome::Status::HaltedEarly: status = "halted-early"; break;
      case CmOutcome::Status::ProgramExhaustedEarly:
        status = "program-exhausted";
        break;
      case CmOutcome::Status::BudgetExceeded: status = "budget"; break;
      case CmOutcome::Status::ProvenNonHalting: status = "nonhalting"; break;
    }
    std::printf("status = %s\nsteps = %" PRIu64 "\n", status, out.steps);
    if (out.status == CmOutcome::Status::Halted) {
      std::printf("output = \"%s\"\n", out.output.c_str());
    }
    if (out.status == CmOutcome::Status::ProvenNonHalting) {
      std::printf("period = %" PRIu64 "\n", out.period);
    }
    return 0;
  }

  if (c_hu->parsed()) {
    require_bits(hu_o.target, "--target");
    ComplexityBound b = h_upper(hu_o.target, hu_o.max_len, hu_o.budget);
    std::printf("target = \"%s\"\nmax_len = %" PRIu64 "\nbudget = %" PRIu64
                "\n",
                b.target.c_str(), b.max_len, b.budget);
    if (b.bound) {
      std::printf("bound = %" PRIu64 "\nwitness = \"%s\"\n", *b.bound,
                  b.witness.c_str());
    } else {
      std::printf("bound = none\n");
    }
    std::printf("programs_run = %" PRIu64 "\n", b.programs_run);
    return 0;
  }

  if (c_pu->parsed()) {
    require_bits(pu_o.target, "--target");
    std::printf(
        "pu = %s\n",
        dyadic_str(p_u_lower(pu_o.target, pu_o.max_len, pu_o.budget)).c_str());
    return 0;
  }

  if (c_om->parsed()) {
    OmegaEstimate est = omega_lower(om_o.max_len, om_o.budget);
    std::printf("omega = %s\nhalted = %zu\n", dyadic_str(est.value).c_str(),
                est.halted_programs.items().size());
    return 0;
  }

  if (c_mc->parsed()) {
    MonteCarloEstimate est =
        omega_montecarlo(mc_o.samples, mc_o.budget, mc_o.seed);
    mpq_class ratio(static_cast<unsigned long>(est.halted),
                    static_cast<unsigned long>(est.samples));
    ratio.canonicalize();
    std::printf("halted = %" PRIu64 "\nsamples = %" PRIu64
                "\nestimate = %s (~ %.9g)\n",
                est.halted, est.samples, ratio.get_str().c_str(), est.approx());
    return 0;
  }

  if (c_bv->parsed()) {
    BeaverReport r = sigma(bv_o.states, bv_o.budget, bv_o.db);
    std::printf("n = %d\nbudget = %" PRIu64 "\nsigma = %" PRIu64
                "\ns = %" PRIu64 "\n",
                r.n, r.budget, r.sigma_ones, r.s_steps);
    std::printf("halted = %" PRIu64 "\ncycle = %" PRIu64 "\nrunaway = %" PRIu64
                "\nunresolved = %" PRIu64 "\n",
                r.halted, r.cycle, r.runaway, r.unresolved);
    std::printf("ones_champion = %" PRIu64 "\nsteps_champion = %" PRIu64
                "\nfinal = %s\n",
                r.ones_champion, r.steps_champion, yesno(r.final()));
    return 0;
  }

  if (c_sn->parsed()) {
    SigmaProgramResult r = sigma_program(sn_o.max_len, sn_o.budget);
    if (r.value) {
      std::printf("value = %s\nwitness = \"%s\"\n", r.value->get_str().c_str(),
                  r.witness.c_str());
    } else {
      std::printf("value = none\n");
    }
    std::printf("programs_run = %" PRIu64 "\nhalted = %" PRIu64 "\n",
                r.programs_run, r.halted);
    return 0;
  }

  if (c_dg->parsed()) {
    bool has_table = c_dg->count("--table") > 0;
    bool has_rows = c_dg->count("--rows") > 0;
    if (has_table == has_rows) {
      throw std::invalid_argument("give exactly one of --table / --rows");
    }
    std::vector<BitString> rows;
    if (has_rows) {
      rows = split_csv(dg_o.rows);
    } else {
      std::string line;
      std::istringstream in(read_file(dg_o.table));
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
      }
    }
    std::printf("%s\n", diagonal(rows).c_str());
    return 0;
  }

  if (c_cz->parsed()) {
    if (cz_o.n.empty() ||
        cz_o.n.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("--n: bad integer '" + cz_o.n + "'");
    }
    CollatzResult r = collatz_steps(mpz_class(cz_o.n), cz_o.budget);
    std::printf("reached_one = %s\nsteps = %" PRIu64 "\npeak = %s\n",
                yesno(r.reached_one), r.steps, r.peak.get_str().c_str());
    return 0;
  }

  if (c_cr->parsed()) {
    CollatzRangeReport r =
        collatz_verify_range(cr_o.lo, cr_o.hi, cr_o.budget);
    std::printf("all_halted = %s\nmax_steps = %" PRIu64 "\nargmax = %" PRIu64
                "\nchecked = %" PRIu64 "\n",
                yesno(r.all_halted), r.max_steps, r.argmax, r.checked);
    return 0;
  }

  if (c_tm->parsed()) {
    std::printf("%s\n", thue_morse(tm_o.k).c_str());
    return 0;
  }

  if (c_cf->parsed()) {
    auto witness = find_cube(cf_o.x);
    std::printf("cube_free = %s\n", yesno(!witness));
    if (witness) {
      std::printf("pos = %zu\nfactor = \"%s\"\n", witness->pos,
                  witness->factor.c_str());
    }
    return 0;
  }

  if (c_rb->parsed()) {
    if (rb_o.n.empty() ||
        rb_o.n.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("--n: bad integer '" + rb_o.n + "'");
    }
    std::function<mpz_class(const mpz_class&)> approx;
    if (rb_o.real == "half") {
      approx = approx_half;
    } else if (rb_o.real == "sqrt2") {
      approx = approx_sqrt2;
    } else if (rb_o.real == "phi") {
      approx = approx_phi;
    } else {
      throw std::invalid_argument("--real must be half, sqrt2 or phi");
    }
    RationalBounds b = computable_real_bounds(approx, mpz_class(rb_o.n));
    std::printf("lo = %s\nhi = %s\n", b.lo.get_str().c_str(),
                b.hi.get_str().c_str());
    return 0;
  }

  if (c_sc->parsed()) {
    double nmax = scaling_nmax({sc_o.k, sc_o.alpha, sc_o.c}, sc_o.ell);
    std::printf("nmax = %.9g\n", nmax);
    return 0;
  }

  if (c_pf->parsed()) {
    InputFamily family;
    if (pf_o.family == "unary") {
      family = unary_family();
    } else if (pf_o.family == "binary-counter") {
      family = binary_counter_family();
    } else {
      throw std::invalid_argument("--family must be unary or binary-counter");
    }
    std::optional<ScalingField> field;
    if (!pf_o.fit.empty()) {
      if (pf_o.fit == "t") {
        field = ScalingField::Time;
      } else if (pf_o.fit == "s") {
        field = ScalingField::Space;
      } else {
        throw std::invalid_argument("--fit must be t or s");
      }
    }
    std::vector<uint64_t> sizes;
    for (const auto& tok : split_csv(pf_o.sizes)) {
      sizes.push_back(parse_count(tok, "--sizes"));
    }
    auto samples = measure_scaling(load_machine(pf_o.machine), family, sizes,
                                   pf_o.budget);
    std::printf("%s", samples_csv(samples).c_str());
    if (field) {
      PowerLawFit fit = fit_power_law(samples, *field);
      std::printf("k_hat = %.9g\nc_hat = %.9g\nresidual = %.9g\n", fit.k_hat,
                  fit.c_hat, fit.residual);
    }
    return 0;
  }

  return 0;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
}
