#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flagalg/report.hpp"

namespace {

using flagalg::RunConfig;

struct CommonOpts {
  std::string q = "2";
  int n = 2;
  std::string modulus;
  std::string alphas;
  std::string format = "text";
  bool json = false;
  bool no_timing = false;
  long long max_size = -1;
};

void attach_common(CLI::App* cmd, CommonOpts& o, bool need_alphas = false) {
  cmd->add_option("--q", o.q, "field size (a rational like 7/2 is accepted by combin-check)")
      ->required();
  cmd->add_option("--n", o.n, "dimension N of the ambient space")->required();
  cmd->add_option("--modulus", o.modulus, "field modulus coefficients c0,c1,...");
  if (need_alphas) cmd->add_option("--alphas", o.alphas, "evaluation parameters a1,...,aN");
  cmd->add_option("--format", o.format, "output format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_flag("--json", o.json, "shortcut for --format json");
  cmd->add_flag("--no-timing", o.no_timing, "suppress timing fields for reproducible output");
  cmd->add_option("--max-size", o.max_size, "cap on |P| (default 200000, env FLAGALG_MAX_SIZE)");
}

int build_config(const CommonOpts& o, const std::set<std::string>& suites, RunConfig& cfg,
                 std::string& err) {
  auto q = flagalg::parse_rational(o.q);
  if (!q) {
    err = "cannot parse --q value '" + o.q + "'";
    return 2;
  }
  cfg.q = *q;
  cfg.N = o.n;
  cfg.suites = suites;
  cfg.format = o.json ? "json" : o.format;
  cfg.timing = !o.no_timing;
  cfg.max_size = 200000;
  if (const char* env = std::getenv("FLAGALG_MAX_SIZE")) cfg.max_size = std::atoll(env);
  if (o.max_size > 0) cfg.max_size = o.max_size;
  if (!o.modulus.empty()) {
    std::vector<int> m;
    std::string cur;
    for (char ch : o.modulus + ",") {
      if (ch == ',') {
        if (cur.empty()) {
          err = "bad --modulus";
          return 2;
        }
        m.push_back(std::atoi(cur.c_str()));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    cfg.modulus = m;
  }
  if (!o.alphas.empty()) {
    std::vector<flagalg::Rational> a(1, flagalg::Rational(0));
    std::string cur;
    for (char ch : o.alphas + ",") {
      if (ch == ',') {
        auto r = flagalg::parse_rational(cur);
        if (!r) {
          err = "cannot parse --alphas entry '" + cur + "'";
          return 2;
        }
        a.push_back(*r);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    cfg.alphas = a;
  }
  return 0;
}

int run_with(const CommonOpts& o, const std::set<std::string>& suites) {
  RunConfig cfg;
  std::string err;
  int rc = build_config(o, suites, cfg, err);
  if (rc != 0) {
    std::cerr << "error: " << err << "\n";
    return rc;
  }
  try {
    flagalg::Report rep = flagalg::run_suite(cfg);
    std::cout << flagalg::emit_report(rep, cfg.format);
    return rep.failed() == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagalg: exact verification suites for the flag subspace-lattice algebra"};
  app.require_subcommand(1);

  CommonOpts lat_o, comb_o, h_o, dec_o, uq_o, run_o;
  CLI::App* lat = app.add_subcommand("lattice-stats", "lattice sizes and covering counts");
  attach_common(lat, lat_o);
  CLI::App* comb = app.add_subcommand("combin-check", "rook placement and kappa identities");
  attach_common(comb, comb_o);
  CLI::App* h = app.add_subcommand("verify-h", "relations and spectral structure of the algebra");
  attach_common(h, h_o);
  CLI::App* dec = app.add_subcommand("decompose", "decompose the standard module");
  attach_common(dec, dec_o);
  CLI::App* uq = app.add_subcommand("verify-uq", "quantum affine action checks");
  attach_common(uq, uq_o, true);

  CLI::App* run = app.add_subcommand("run", "run selected suites");
  std::vector<std::string> suite_names;
  bool all = false;
  attach_common(run, run_o, true);
  run->add_option("--suite", suite_names, "suites: lattice|combin|h|decompose|uq|all");
  run->add_flag("--all", all, "run every suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (lat->parsed()) return run_with(lat_o, {"lattice"});
  if (comb->parsed()) return run_with(comb_o, {"combin"});
  if (h->parsed()) return run_with(h_o, {"h"});
  if (dec->parsed()) return run_with(dec_o, {"decompose"});
  if (uq->parsed()) return run_with(uq_o, {"uq"});
  if (run->parsed()) {
    std::set<std::string> suites;
    for (std::string s : suite_names) {
      // subcommand names are accepted as suite aliases
      if (s == "lattice-stats") s = "lattice";
      if (s == "combin-check") s = "combin";
      if (s == "verify-h") s = "h";
      if (s == "verify-uq") s = "uq";
      suites.insert(s);
    }
    if (all || suites.count("all")) {
      suites = {"lattice", "combin", "h", "decompose", "uq"};
    }
    if (suites.empty()) {
      std::cerr << "error: choose suites with --suite or --all\n";
      return 2;
    }
    return run_with(run_o, suites);
  }
  return 2;
}
