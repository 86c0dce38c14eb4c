#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "percoplanar/cli.hpp"

using percoplanar::cli::run;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("generate then planar") {
  CliResult gen = invoke({"generate", "--family", "complete", "--n", "5", "--out", "cli_k5.txt"});
  REQUIRE(gen.code == 0);
  CHECK(gen.out.find("n=5 m=10") != std::string::npos);

  CliResult planar = invoke({"planar", "cli_k5.txt"});
  CHECK(planar.code == 0);
  CHECK(planar.out == "non-planar\n");

  CliResult gen2 = invoke({"generate", "--family", "grid", "--rows", "3", "--cols", "5", "--out",
                           "cli_grid.txt"});
  REQUIRE(gen2.code == 0);
  CliResult planar2 = invoke({"planar", "cli_grid.txt"});
  CHECK(planar2.out == "planar\n");

  std::remove("cli_grid.txt");
}

TEST_CASE("percolate at p=1 reproduces the input file") {
  REQUIRE(invoke({"generate", "--family", "hypercube", "--d", "4", "--out", "cli_q4.txt"}).code == 0);
  REQUIRE(invoke({"percolate", "cli_q4.txt", "--p", "1.0", "--out", "cli_q4_p1.txt", "--seed", "3"})
              .code == 0);
  CHECK(slurp("cli_q4.txt") == slurp("cli_q4_p1.txt"));

  // deterministic subsample
  REQUIRE(invoke({"percolate", "cli_q4.txt", "--p", "0.5", "--out", "cli_q4_a.txt", "--seed", "3"})
              .code == 0);
  REQUIRE(invoke({"percolate", "cli_q4.txt", "--p", "0.5", "--out", "cli_q4_b.txt", "--seed", "3"})
              .code == 0);
  CHECK(slurp("cli_q4_a.txt") == slurp("cli_q4_b.txt"));
  std::remove("cli_q4.txt");
  std::remove("cli_q4_p1.txt");
  std::remove("cli_q4_a.txt");
  std::remove("cli_q4_b.txt");
}

TEST_CASE("certify prints a block or no-certificate") {
  REQUIRE(invoke({"generate", "--family", "complete", "--n", "5", "--out", "cli_k5.txt"}).code == 0);
  CliResult cert = invoke({"certify", "cli_k5.txt", "--ell", "3"});
  CHECK(cert.code == 0);
  CHECK(cert.out.rfind("certificate density-girth\n", 0) == 0);

  REQUIRE(invoke({"generate", "--family", "grid", "--rows", "4", "--cols", "4", "--out",
                  "cli_grid4.txt"})
              .code == 0);
  CliResult none = invoke({"certify", "cli_grid4.txt", "--ell", "4"});
  CHECK(none.code == 0);
  CHECK(none.out == "no-certificate\n");
  std::remove("cli_k5.txt");
  std::remove("cli_grid4.txt");
}

TEST_CASE("analyze prints the fixed point") {
  CliResult fx = invoke({"analyze", "--fixed-point", "2.0"});
  CHECK(fx.code == 0);
  CHECK(fx.out.rfind("x = 0.79681213", 0) == 0);

  CliResult pred = invoke({"analyze", "--c", "1.5", "--n", "100000", "--g0", "5"});
  CHECK(pred.code == 0);
  CHECK(pred.out.find("refined = 1.9546875") != std::string::npos);
  CHECK(pred.out.find("vertices = 58281.16") != std::string::npos);

  CHECK(invoke({"analyze"}).code == 1);
}

TEST_CASE("witness one-line report") {
  CliResult rep = invoke({"witness", "--family", "random_regular", "--n", "2000", "--r", "16",
                          "--epsilon", "0.5", "--seed", "5"});
  CHECK(rep.code == 0);
  CHECK(rep.out.rfind("witness ", 0) == 0);
  bool certified = rep.out.find("witness certified") == 0;
  bool exhausted = rep.out.find("witness exhausted") == 0;
  CHECK((certified || exhausted));
  if (certified) CHECK(rep.out.find("certificate ") != std::string::npos);
}

TEST_CASE("sweep runs a config file and writes CSV") {
  {
    std::ofstream cfg("cli_sweep.cfg");
    cfg << "family = disjoint_cliques\ncopies = 20\nr = 3\nmode = oracle-only\nseed = 4\n"
        << "out = cli_sweep.csv\n[grid]\np=0.4 trials=6\np=0.9 trials=6\n";
  }
  CliResult sweep = invoke({"sweep", "--config", "cli_sweep.cfg"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("P(planar)") != std::string::npos);
  std::string csv = slurp("cli_sweep.csv");
  CHECK(csv.rfind("family,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);  // header + 12 records
  std::remove("cli_sweep.cfg");
  std::remove("cli_sweep.csv");
}

TEST_CASE("exit codes: usage, validation, io") {
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"planar", "no_such_file.txt"}).code == 2);
  CHECK(invoke({"generate", "--family", "complete", "--n", "0", "--out", "x.txt"}).code == 1);
  CliResult unknown = invoke({"planar"});
  CHECK(unknown.code == 1);
  CHECK_FALSE(unknown.err.empty());
}
