#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"

// Drives the installed binary end to end: every subcommand, the documented
// exit codes, and byte-for-byte reproducibility. OMEGALAB_CLI_PATH comes
// from the build.

namespace {

struct CmdResult {
  int status = -1;
  std::string out;  // stdout and stderr, merged
};

CmdResult cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += OMEGALAB_CLI_PATH;
  cmd += " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  CmdResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

const std::string& fixdir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/omegalab_cli_XXXXXX";
    if (!mkdtemp(tmpl)) throw std::runtime_error("mkdtemp failed");
    return std::string(tmpl);
  }();
  return dir;
}

std::string fixture(const std::string& name, const std::string& content) {
  std::string path = fixdir() + "/" + name;
  std::ifstream probe(path);
  if (!probe.good()) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  return path;
}

std::string halter_mdl() {
  return fixture("halter.mdl",
                 "machine halter\n"
                 "states: A\n"
                 "start: A\n"
                 "A _ -> 1 R HALT\n"
                 "A 0 -> 0 R HALT\n"
                 "A 1 -> 1 R HALT\n");
}

std::string sweeper_mdl() {
  return fixture("sweeper.mdl",
                 "machine sweeper\n"
                 "states: A\n"
                 "start: A\n"
                 "A _ -> 1 L HALT\n"
                 "A 0 -> 0 R A\n"
                 "A 1 -> 1 R A\n");
}

std::string bouncer_mdl() {
  return fixture("bouncer.mdl",
                 "machine bouncer\n"
                 "states: A B\n"
                 "start: A\n"
                 "A _ -> _ R B\n"
                 "A 0 -> 0 R A\n"
                 "A 1 -> 1 R A\n"
                 "B _ -> _ L A\n"
                 "B 0 -> 0 R B\n"
                 "B 1 -> 1 R B\n");
}

std::string cm_mdl() {
  return fixture("cm.mdl",
                 "chaitin pair\n"
                 "states: A B C\n"
                 "start: A\n"
                 "A _ 0 -> A 1 R B\n"
                 "A _ 1 -> A 1 R B\n"
                 "A 0 0 -> S 0 R A\n"
                 "A 0 1 -> S 0 R A\n"
                 "A 1 0 -> S 0 R A\n"
                 "A 1 1 -> S 0 R A\n"
                 "B _ 0 -> S 0 R B\n"
                 "B _ 1 -> S 0 R B\n"
                 "B 0 0 -> S 0 L B\n"
                 "B 0 1 -> S 1 R B\n"
                 "B 1 0 -> A 1 L C\n"
                 "B 1 1 -> A 1 L C\n"
                 "C _ 0 -> S 0 R C\n"
                 "C _ 1 -> S 0 R C\n"
                 "C 0 0 -> S 1 L HALT\n"
                 "C 0 1 -> S 1 L HALT\n"
                 "C 1 0 -> S 0 R C\n"
                 "C 1 1 -> S 0 R C\n");
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cli: run reports each outcome kind") {
  CmdResult halter = cli("run --machine " + halter_mdl());
  CHECK(halter.status == 0);
  CHECK(halter.out ==
        "kind = halted\nsteps = 1\nones = 1\noutput = \"1\"\nvisited = 1\n");

  CmdResult sweep = cli("run --machine " + sweeper_mdl() +
                        " --input 111 --budget 50");
  CHECK(sweep.status == 0);
  CHECK(sweep.out ==
        "kind = halted\nsteps = 4\nones = 4\noutput = \"1111\"\nvisited = 4\n");

  CmdResult bounce = cli("run --machine " + bouncer_mdl() + " --budget 50");
  CHECK(bounce.status == 0);
  CHECK(bounce.out ==
        "kind = nonhalting\ncertificate = cycle\nperiod = 2\nsteps = 3\n"
        "visited = 2\n");
}

TEST_CASE("cli: codes move between text, files and packed bytes") {
  CmdResult enc = cli("encode --machine " + sweeper_mdl());
  CHECK(enc.status == 0);
  CHECK(enc.out == "0110110110101101110110\n");

  CmdResult dec = cli("decode --code 0110111110111111");
  CHECK(dec.status == 0);
  CHECK(dec.out ==
        "machine m\nstates: A\nstart: A\n"
        "A _ -> 1 R HALT\nA 0 -> 0 R HALT\nA 1 -> 1 R HALT\n");

  CmdResult utm = cli("utm --code 0110111110111111 --input 0");
  CHECK(utm.status == 0);
  CHECK(utm.out ==
        "kind = halted\nsteps = 1\nones = 0\noutput = \"0\"\nvisited = 1\n");

  std::string code_path = fixdir() + "/bouncer.code";
  std::string bin_path = fixdir() + "/bouncer.bin";
  CHECK(cli("encode --machine " + bouncer_mdl() + " --out " + code_path)
            .status == 0);
  CHECK(read_all(code_path) ==
        "01110101111010110111011000011010101111110111\n");
  CHECK(cli("encode --machine " + bouncer_mdl() + " --out " + bin_path +
            " --packed")
            .status == 0);

  std::string bouncer_text =
      "machine m\nstates: A B\nstart: A\n"
      "A _ -> _ R B\nA 0 -> 0 R A\nA 1 -> 1 R A\n"
      "B _ -> _ L A\nB 0 -> 0 R B\nB 1 -> 1 R B\n";
  CmdResult from_text = cli("decode --code-file " + code_path);
  CHECK(from_text.status == 0);
  CHECK(from_text.out == bouncer_text);
  CmdResult from_bytes = cli("decode --code-file " + bin_path + " --packed");
  CHECK(from_bytes.status == 0);
  CHECK(from_bytes.out == bouncer_text);

  CmdResult via_file = cli("utm --code-file " + code_path + " --budget 30");
  CHECK(via_file.status == 0);
  CHECK(via_file.out ==
        "kind = nonhalting\ncertificate = cycle\nperiod = 2\nsteps = 3\n"
        "visited = 2\n");
}

TEST_CASE("cli: prefix codes and Kraft sums") {
  CHECK(cli("prefix --log 101").out == "00111101\n");
  CHECK(cli("prefix --unary 00").out == "00100\n");

  CmdResult bad = cli("prefix --check --set 0,1,01,10");
  CHECK(bad.status == 0);
  CHECK(bad.out == "prefix_free = no\nprefix = \"0\"\nextension = \"01\"\n");
  CHECK(cli("prefix --check --set 0,10").out == "prefix_free = yes\n");
  CHECK(cli("prefix --kraft --set 0,10").out == "kraft = 3/2^2 (~ 0.75)\n");

  std::string codes = fixture("codes.txt", "0\n10\n111\n");
  CHECK(cli("prefix --check --set-file " + codes).out == "prefix_free = yes\n");
}

TEST_CASE("cli: the two-tape machine reports its four verdicts") {
  std::string m = cm_mdl();
  CHECK(cli("cm-run --machine " + m + " --program 10").out ==
        "status = halted\nsteps = 3\noutput = \"11\"\n");
  CHECK(cli("cm-run --machine " + m + " --program 0 --budget 100").out ==
        "status = nonhalting\nsteps = 5\nperiod = 2\n");
  CHECK(cli("cm-run --machine " + m + " --program 101").out ==
        "status = halted-early\nsteps = 3\n");
  CHECK(cli("cm-run --machine " + m + " --program 1").out ==
        "status = program-exhausted\nsteps = 2\n");
}

TEST_CASE("cli: complexity and halting probability estimators") {
  CmdResult hu = cli("h-upper --target 1 --max-len 24 --budget 200");
  CHECK(hu.status == 0);
  CHECK(hu.out ==
        "target = \"1\"\nmax_len = 24\nbudget = 200\nbound = 23\n"
        "witness = \"00001111001101101001001\"\nprograms_run = 120\n");

  CHECK(cli("pu --target 1 --max-len 24 --budget 200").out ==
        "pu = 3/2^20 (~ 2.86102295e-06)\n");
  CHECK(cli("omega --max-len 24 --budget 200").out ==
        "omega = 1/2^17 (~ 7.62939453e-06)\nhalted = 56\n");
  CHECK(cli("omega-mc --samples 500 --budget 100 --seed 42").out ==
        "halted = 0\nsamples = 500\nestimate = 0 (~ 0)\n");
  CHECK(cli("sigma-n --max-len 24 --budget 200").out ==
        "value = 1\nwitness = \"00001111001101101001001\"\n"
        "programs_run = 152\nhalted = 152\n");
}

TEST_CASE("cli: census of the one and two state classes") {
  CmdResult one = cli("beaver --states 1 --budget 100");
  CHECK(one.status == 0);
  CHECK(one.out ==
        "n = 1\nbudget = 100\nsigma = 1\ns = 1\nhalted = 32\ncycle = 0\n"
        "runaway = 32\nunresolved = 0\nones_champion = 32\n"
        "steps_champion = 0\nfinal = yes\n");

  CmdResult two = cli("beaver --states 2 --budget 200");
  CHECK(two.status == 0);
  CHECK(two.out ==
        "n = 2\nbudget = 200\nsigma = 4\ns = 6\nhalted = 9784\ncycle = 430\n"
        "runaway = 10522\nunresolved = 0\nones_champion = 15534\n"
        "steps_champion = 3584\nfinal = yes\n");

  std::string db = fixdir() + "/n1.bbdb";
  CmdResult with_db =
      cli("beaver --states 1 --budget 100 --db " + db);
  CHECK(with_db.out == one.out);
  std::string head = read_all(db).substr(0, 22);
  CHECK(head == "# bbdb n=1 budget=100\n");
  CHECK(cli("beaver --states 1 --budget 100 --db " + db).out == one.out);
}

TEST_CASE("cli: exploration subcommands") {
  std::string table = fixture("table.txt", "0110\n1010\n0011\n1110\n");
  CHECK(cli("diagonal --table " + table).out == "1101\n");
  CHECK(cli("diagonal --rows 10,01").out == "00\n");

  CHECK(cli("collatz --n 27").out ==
        "reached_one = yes\nsteps = 111\npeak = 9232\n");
  CHECK(cli("collatz-range --lo 1 --hi 10000 --budget 10000").out ==
        "all_halted = yes\nmax_steps = 261\nargmax = 6171\nchecked = 10000\n");

  CHECK(cli("thue-morse --k 4").out == "0110100110010110\n");
  CHECK(cli("cube-free --x 0110").out == "cube_free = yes\n");
  CHECK(cli("cube-free --x 10101010").out ==
        "cube_free = no\npos = 0\nfactor = \"10\"\n");

  CHECK(cli("real-bounds --real sqrt2 --n 1000").out ==
        "lo = 1413/1000\nhi = 283/200\n");
  CHECK(cli("scaling --k 3 --alpha 2 --c 1e10 --ell 1").out ==
        "nmax = 2154.43469\n");
}

TEST_CASE("cli: profiling emits csv and an optional fit") {
  CmdResult csv = cli("profile --machine " + sweeper_mdl() +
                      " --sizes 1,2,3,4 --budget 100");
  CHECK(csv.status == 0);
  CHECK(csv.out == "N,t,s\n1,2,2\n2,3,3\n3,4,4\n4,5,5\n");

  CmdResult fit = cli("profile --machine " + sweeper_mdl() +
                      " --sizes 1,2,4,8,16,32 --budget 100 --fit t");
  CHECK(fit.status == 0);
  CHECK(fit.out ==
        "N,t,s\n1,2,2\n2,3,3\n4,5,5\n8,9,9\n16,17,17\n32,33,33\n"
        "k_hat = 0.816499101\nc_hat = 1.77382581\nresidual = 0.0810343551\n");
}

TEST_CASE("cli: domain errors exit 1 with a reason") {
  auto expect_error = [](const std::string& args, const std::string& message) {
    CmdResult r = cli(args);
    CHECK(r.status == 1);
    CHECK(r.out == "error: " + message + "\n");
  };

  expect_error("run --machine " + fixdir() + "/nosuch.mdl",
               "cannot open '" + fixdir() + "/nosuch.mdl'");
  expect_error("run --machine " + halter_mdl() + " --input 12",
               "--input must consist of 0 and 1");
  expect_error("utm --code 0110", "bit 4: truncated code: missing write tag");
  expect_error("thue-morse --k 25", "thue_morse: k must be in [0, 24]");
  expect_error("collatz --n 0", "collatz_steps: n must be positive");
  expect_error("scaling --k 0 --alpha 1 --c 1 --ell 1",
               "scaling law: k must be positive");
  expect_error("encode --machine " + sweeper_mdl() + " --packed",
               "--packed requires --out");
  expect_error("decode --code 0110 --code-file " + fixdir() + "/bouncer.code",
               "give exactly one of --code / --code-file");
  expect_error("real-bounds --real tau --n 10",
               "--real must be half, sqrt2 or phi");
  expect_error("profile --machine " + sweeper_mdl() +
                   " --sizes 1,2,4 --budget 100 --fit x",
               "--fit must be t or s");
}

TEST_CASE("cli: usage errors exit 1, help exits 0") {
  CHECK(cli("--help").status == 0);
  CHECK(cli("beaver --help").status == 0);

  CmdResult none = cli("");
  CHECK(none.status == 1);
  CmdResult bogus = cli("bogus-subcommand");
  CHECK(bogus.status == 1);
  CHECK(bogus.out.find("Subcommands") != std::string::npos);
  CHECK(cli("run").status == 1);  // missing required --machine
  CHECK(cli("beaver --states").status == 1);
}

TEST_CASE("cli: identical invocations are byte identical, workers included") {
  const char* matrix[] = {
      "omega --max-len 30 --budget 200",
      "beaver --states 2 --budget 200",
      "omega-mc --samples 500 --budget 100 --seed 42",
      "collatz-range --lo 1 --hi 10000 --budget 10000",
      "h-upper --target 1 --max-len 30 --budget 200",
  };
  for (const std::string args : matrix) {
    CmdResult first = cli(args);
    CmdResult second = cli(args);
    CmdResult sharded = cli(args, "OMEGALAB_THREADS=4");
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
    CHECK(first.out == sharded.out);
  }
}
