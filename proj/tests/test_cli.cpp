#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "flagalg/report.hpp"

using namespace flagalg;

namespace {

#ifndef FLAGALG_CLI_PATH
#define FLAGALG_CLI_PATH "flagalg"
#endif

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  CmdResult r;
  std::string cmd = std::string(FLAGALG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("run --all passes at (2,2)") {
  CmdResult r = run_cli("run --q 2 --n 2 --all --no-timing --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("params"));
  CHECK(j.contains("checks"));
  CHECK(j.contains("decomposition"));
  CHECK(j.contains("summary"));
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["params"]["q"] == "2");
  CHECK(j["params"]["n"] == 2);
  CHECK(j["decomposition"].size() == 2);  // two irreducible classes at (2,2)
  bool saw_sizes = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "lattice.bucket_sizes")
      saw_sizes = c.contains("witness") &&
                  std::string(c["witness"]).find("|P|=5") != std::string::npos;
  CHECK(saw_sizes);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c["status"] == "pass");
    CHECK(!c.contains("ms"));  // --no-timing drops timing fields
  }
}

TEST_CASE("single-suite subcommands") {
  CHECK(run_cli("lattice-stats --q 2 --n 2").exit_code == 0);
  CHECK(run_cli("combin-check --q 7/2 --n 3").exit_code == 0);
  CHECK(run_cli("verify-h --q 2 --n 1").exit_code == 0);
  CHECK(run_cli("verify-uq --q 2 --n 2 --alphas 4,16").exit_code == 0);
  // subcommand names double as --suite aliases
  CHECK(run_cli("run --q 2 --n 1 --suite verify-h").exit_code == 0);
  CHECK(run_cli("run --q 2 --n 2 --suite lattice --suite combin-check").exit_code == 0);
}

TEST_CASE("decomposition row matches the (3,2) table") {
  CmdResult r = run_cli("decompose --q 3 --n 2 --json --no-timing");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& row : j["decomposition"]) {
    if (row["mu"] == "01") {
      found = true;
      CHECK(row["lambda"] == nlohmann::json::array({1, 2}));
      CHECK(row["dim"] == 1);
      CHECK(row["multiplicity"] == 2);
      CHECK(row["formula"] == 2);
      CHECK(row["match"] == true);
    }
  }
  CHECK(found);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("run --q 6 --n 2 --all").exit_code == 2);
  CHECK(run_cli("run --q 2 --n 2").exit_code == 2);          // no suites chosen
  CHECK(run_cli("run --q 2 --n 2 --suite bogus").exit_code == 2);
  CHECK(run_cli("run --q x --n 2 --all").exit_code == 2);
  CHECK(run_cli("decompose --n 2").exit_code == 2);          // missing --q
  CHECK(run_cli("verify-uq --q 2 --n 2 --alphas 0,1").exit_code == 2);
  CmdResult r = run_cli("run --q 6 --n 2 --all");
  CHECK(r.out.find("prime power") != std::string::npos);
}

TEST_CASE("size cap respected via flag and environment") {
  CHECK(run_cli("lattice-stats --q 2 --n 4 --max-size 10").exit_code == 2);
  CHECK(run_cli("lattice-stats --q 2 --n 4").exit_code == 0);
  // environment variable mirrors --max-size
  FILE* pipe = popen((std::string("FLAGALG_MAX_SIZE=10 ") + FLAGALG_CLI_PATH +
                      " lattice-stats --q 2 --n 4 2>&1; echo exit=$?")
                         .c_str(),
                     "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 512> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  CHECK(out.find("exit=2") != std::string::npos);
}

TEST_CASE("JSON output is byte-identical across runs with --no-timing") {
  std::string args = "run --q 2 --n 2 --all --format json --no-timing";
  CmdResult a = run_cli(args);
  CmdResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("combin suite runs beyond the lattice scale") {
  CHECK(run_cli("combin-check --q 7/2 --n 8 --no-timing").exit_code == 0);
  CHECK(run_cli("combin-check --q 2 --n 11").exit_code == 2);
  CHECK(run_cli("lattice-stats --q 2 --n 8").exit_code == 2);
}

TEST_CASE("CSV header is fixed") {
  CmdResult r = run_cli("lattice-stats --q 2 --n 2 --format csv --no-timing");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("name,status,witness,ms\n", 0) == 0);
}

TEST_CASE("modulus override") {
  // F_9 with the alternative modulus t^2 + 2t + 2 (irreducible over F_3)
  CHECK(run_cli("lattice-stats --q 9 --n 1 --modulus 2,2,1").exit_code == 0);
  CHECK(run_cli("lattice-stats --q 9 --n 1 --modulus 1,0,2").exit_code == 2);  // not monic
  CHECK(run_cli("lattice-stats --q 4 --n 2 --modulus 1,1,1").exit_code == 0);
}

TEST_CASE("emit_report on an empty report") {
  Report rep;
  rep.cfg.timing = false;
  std::string json = emit_report(rep, "json");
  auto j = nlohmann::json::parse(json);
  CHECK(j["checks"] == nlohmann::json::array());
  CHECK(j["decomposition"] == nlohmann::json::array());
  CHECK(j["summary"]["total"] == 0);
  CHECK(emit_report(rep, "csv") == "name,status,witness,ms\n");
}

TEST_CASE("in-process run_suite mirrors the CLI") {
  RunConfig cfg;
  cfg.q = Rational(2);
  cfg.N = 2;
  cfg.suites = {"lattice"};
  cfg.timing = false;
  Report rep = run_suite(cfg);
  CHECK(rep.failed() == 0);
  CHECK(!rep.checks.empty());
  std::string json1 = emit_report(rep, "json");
  std::string json2 = emit_report(rep, "json");
  CHECK(json1 == json2);
  RunConfig bad = cfg;
  bad.q = Rational(6);
  CHECK_THROWS_AS(run_suite(bad), std::invalid_argument);
  RunConfig combin_only = cfg;
  combin_only.q = Rational(7, 2);
  combin_only.suites = {"combin"};
  CHECK(run_suite(combin_only).failed() == 0);
}
