#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flagalg/algebra.hpp"
#include "flagalg/rational.hpp"

namespace flagalg {

struct RunConfig {
  Rational q = Rational(2);  // rational accepted by the combin suite only
  int N = 2;
  std::optional<std::vector<int>> modulus;   // c0..ce over F_p
  std::vector<Rational> alphas;              // 1-based when set; empty = default q^{2m}
  std::set<std::string> suites;              // lattice, combin, h, decompose, uq
  std::string format = "text";               // text | json | csv
  bool timing = true;
  long long max_size = 200000;
};

struct TimedCheck {
  std::string name;
  bool pass = false;
  std::string witness;
  double ms = 0.0;
};

struct DecompRow {
  std::string mu;
  std::vector<int> lambda;
  int dim = 0;
  Integer multiplicity;
  Integer formula;
  bool match = false;
};

struct Report {
  RunConfig cfg;
  std::vector<TimedCheck> checks;
  std::vector<DecompRow> decomposition;
  int passed() const;
  int failed() const;
};

// q values with lattice support.
bool supported_prime_power(long q);

// Executes the selected suites in dependency order.  Throws
// std::invalid_argument on configuration errors (exit code 2 at the CLI).
Report run_suite(const RunConfig& cfg);

std::string emit_report(const Report& rep, const std::string& format);

}  // namespace flagalg
