#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "flagalg/report.hpp"

namespace flagalg {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  return out + "\"";
}

std::string fmt_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

nlohmann::ordered_json params_json(const RunConfig& cfg) {
  nlohmann::ordered_json p;
  p["q"] = to_string(cfg.q);
  p["n"] = cfg.N;
  if (cfg.modulus) {
    std::string m;
    for (size_t i = 0; i < cfg.modulus->size(); ++i) {
      if (i) m += ",";
      m += std::to_string((*cfg.modulus)[i]);
    }
    p["modulus"] = m;
  }
  if (!cfg.alphas.empty()) {
    std::vector<std::string> a;
    for (size_t m = 1; m < cfg.alphas.size(); ++m) a.push_back(to_string(cfg.alphas[m]));
    p["alphas"] = a;
  }
  std::vector<std::string> suites(cfg.suites.begin(), cfg.suites.end());
  p["suites"] = suites;
  p["max_size"] = cfg.max_size;
  return p;
}

}  // namespace

std::string emit_report(const Report& rep, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["params"] = params_json(rep.cfg);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      if (!c.witness.empty()) e["witness"] = c.witness;
      if (rep.cfg.timing) e["ms"] = c.ms;
      j["checks"].push_back(std::move(e));
    }
    j["decomposition"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.decomposition) {
      nlohmann::ordered_json e;
      e["mu"] = r.mu;
      e["lambda"] = r.lambda;
      e["dim"] = r.dim;
      e["multiplicity"] = r.multiplicity.get_si();
      e["formula"] = r.formula.get_si();
      e["match"] = r.match;
      j["decomposition"].push_back(std::move(e));
    }
    j["summary"] = {{"total", rep.checks.size()},
                    {"passed", rep.passed()},
                    {"failed", rep.failed()}};
    return j.dump(2) + "\n";
  }

  if (format == "csv") {
    std::string out = "name,status,witness,ms\n";
    for (const auto& c : rep.checks) {
      out += csv_quote(c.name) + "," + (c.pass ? "pass" : "fail") + "," + csv_quote(c.witness) +
             "," + (rep.cfg.timing ? fmt_ms(c.ms) : "") + "\n";
    }
    return out;
  }

  // text
  std::ostringstream os;
  size_t width = 4;
  for (const auto& c : rep.checks) width = std::max(width, c.name.size());
  for (const auto& c : rep.checks) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << c.name
       << (c.pass ? "PASS" : "FAIL");
    if (rep.cfg.timing) os << "  " << std::right << std::setw(10) << fmt_ms(c.ms) << " ms";
    if (!c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  if (!rep.decomposition.empty()) {
    os << "\ndecomposition (endpoint, shape, dim, multiplicity, formula, match)\n";
    for (const auto& r : rep.decomposition) {
      os << "  mu=" << r.mu << "  lambda={";
      for (size_t i = 0; i < r.lambda.size(); ++i) os << (i ? "," : "") << r.lambda[i];
      os << "}  dim=" << r.dim << "  mult=" << r.multiplicity.get_str() << "  formula="
         << r.formula.get_str() << "  " << (r.match ? "ok" : "MISMATCH") << "\n";
    }
  }
  os << "\n" << rep.passed() << "/" << rep.checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace flagalg
