// Acceptance run: executes the verification suites at their default settings
// and prints one PASS/FAIL line per acceptance criterion. Exit status is 0 only
// when all ten criteria pass. Progress goes to stderr.
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "diracshell/suites.hpp"

using namespace dshell;

namespace {

struct Criterion {
  std::string id, title;
  std::vector<std::pair<std::string, std::string>> parts;  // (suite, check)
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  const SuiteConfig cfg;
  const std::vector<std::string> order = {"clifford", "symbols", "cauchy", "jump",      "mit",
                                          "lorentz",  "shell",   "eps-rate", "full-rate", "eigenscan"};
  std::map<std::string, SuiteResult> res;
  for (const auto& id : order) {
    std::cerr << "== " << id << "\n";
    try {
      res[id] = run_suite(id, cfg, {}, [](const std::string& s) { std::cerr << "  " << s << "\n"; });
      std::cerr << "   " << fmt(res[id].seconds) << " s\n";
    } catch (const std::exception& e) {
      std::cerr << "   error: " << e.what() << "\n";
      res[id].suite = id;
      res[id].notes.push_back(e.what());
    }
  }

  // 7a uses the shell norm fit of the full-rate run (same operator, same masses).
  const std::vector<Criterion> crit = {
      {"1", "Clifford algebra and symbol spectral identities",
       {{"clifford", "clifford.anticommutators"}, {"clifford", "clifford.projections"}, {"clifford", "clifford.spin"},
        {"symbols", "symbols.spectral"}}},
      {"2", "Cauchy operator converges under refinement", {{"cauchy", "cauchy.refine"}}},
      {"3", "jump relation", {{"jump", "jump.vs_cauchy"}}},
      {"4", "resolvents against manufactured solutions",
       {{"mit", "mit.manufactured"}, {"mit", "mit.improving"}, {"lorentz", "lorentz.manufactured"},
        {"lorentz", "lorentz.improving"}, {"full-rate", "perturbed.manufactured"},
        {"full-rate", "perturbed.improving"}, {"full-rate", "perturbed.mass_spread"}}},
      {"5", "Lorentz-scalar modes decouple", {{"lorentz", "lorentz.modes"}, {"lorentz", "lorentz.modes_improving"}}},
      {"6", "MIT exterior and lifting rates in eps", {{"eps-rate", "fit.mit_exterior"}, {"eps-rate", "fit.lifting"}}},
      {"7a", "shell operator norm ~ 1/M", {{"full-rate", "fit.ps_norm"}}},
      {"7b", "shell resolvent decay", {{"shell", "fit.shell_resolvent"}}},
      {"7c", "shell trace decay", {{"shell", "fit.shell_trace"}}},
      {"7d", "correction ~ 1/M", {{"full-rate", "fit.correction"}}},
      {"8", "Krein factor uniformly bounded", {{"full-rate", "xi.uniform"}}},
      {"9", "parametrix transport and boundary residuals",
       {{"symbols", "residual.A0"}, {"symbols", "residual.A1"}, {"symbols", "residual.A2"},
        {"symbols", "boundary.P+Aj"}, {"symbols", "boundary.Pi+A1"}, {"symbols", "order.report"}}},
      {"10", "MIT eigenvalue scan",
       {{"eigenscan", "scan.gap_empty"}, {"eigenscan", "scan.upper_dip"}, {"eigenscan", "scan.stable"},
        {"eigenscan", "scan.ball_oracle"}}},
  };

  // Criterion 7 is one criterion with four parts; its line is the conjunction.
  auto eval = [&](const Criterion& c, std::string& detail) {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [suite, name] : c.parts) {
      const Check* k = res[suite].find(name);
      const bool p = k && k->pass;
      ok = ok && p;
      d << " " << name << "=" << (k ? fmt(k->value) : std::string("missing")) << (p ? "" : "(FAIL)");
    }
    detail = d.str();
    return ok;
  };

  int failed = 0;
  bool seven = true;
  std::string seven_detail;
  for (const auto& c : crit) {
    std::string detail;
    const bool ok = eval(c, detail);
    if (c.id.rfind("7", 0) == 0) {
      seven = seven && ok;
      seven_detail += " [" + c.id + " " + (ok ? "PASS" : "FAIL") + ":" + detail + " ]";
      if (c.id != "7d") continue;
      std::cout << (seven ? "PASS" : "FAIL") << " criterion 7 (large-mass rates):" << seven_detail << "\n";
      failed += !seven;
      continue;
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "):" << detail << "\n";
    failed += !ok;
  }
  std::cout << (10 - failed) << "/10 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
