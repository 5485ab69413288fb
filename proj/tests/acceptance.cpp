// Acceptance gate: runs every verification suite at the contracted sizes and
// tolerances and prints one PASS/FAIL line per criterion.  The last
// criterion drives the installed CLI end to end and checks that repeated
// runs produce byte-identical JSON.

#include "fermifuse/suites.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using fermifuse::SuiteReport;
using fermifuse::run_suite;

struct Criterion {
  std::string label;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

std::vector<Criterion> results;

template <typename Fn>
void criterion(const std::string& label, double time_limit_s, Fn&& fn) {
  Criterion c;
  c.label = label;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.pass = fn(c.detail);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.seconds > time_limit_s) {
    c.pass = false;
    c.detail += " [over time limit]";
  }
  std::printf("%s criterion %s (%.1fs)%s%s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(),
              c.seconds, c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
  results.push_back(c);
}

bool suite_ok(const std::string& name, int n, int trials, std::string& detail) {
  const SuiteReport rep = run_suite(name, n, 0, 1e-8, trials, false);
  std::ostringstream os;
  os << name << " n=" << n << " failed=" << rep.failed << " max_residual=" << rep.max_residual;
  detail += (detail.empty() ? "" : "; ") + os.str();
  return rep.pass();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion("1 (CAR relations)", 5.0, [](std::string& d) {
    return suite_ok("car", 2, 50, d) && suite_ok("car", 4, 50, d);
  });

  criterion("2 (irreducibility)", 10.0, [](std::string& d) {
    return suite_ok("irreducible", 2, 1, d) && suite_ok("irreducible", 4, 1, d);
  });

  criterion("3 (implementers)", 60.0, [](std::string& d) {
    return suite_ok("implementer", 2, 10, d) && suite_ok("implementer", 4, 10, d);
  });

  criterion("4 (modular theory and standard form)", 30.0, [](std::string& d) {
    return suite_ok("modular", 2, 1, d) && suite_ok("modular", 4, 1, d) &&
           suite_ok("standardform", 2, 1, d) && suite_ok("standardform", 4, 1, d);
  });

  criterion("5 (fusion coherence)", 300.0, [](std::string& d) {
    return suite_ok("fusion-coherence", 2, 1, d) && suite_ok("fusion-coherence", 4, 1, d);
  });

  criterion("6 (implementer fusion)", 300.0, [](std::string& d) {
    return suite_ok("mu-hat", 4, 10, d);
  });

  criterion("7 (group fusion equals Connes fusion)", 300.0, [](std::string& d) {
    return suite_ok("theorem-agree", 4, 10, d);
  });

  criterion("8 (fibrewise fusion)", 600.0, [](std::string& d) {
    // N=2 includes the 27-point angle grid; N=4 runs the random tier.
    return suite_ok("fibre", 2, 10, d) && suite_ok("fibre", 4, 10, d);
  });

  criterion("9 (end-to-end CLI determinism)", 900.0, [&cli](std::string& d) {
    if (cli.empty()) {
      d = "no CLI path given";
      return false;
    }
    const std::string out1 = "acceptance_run1.json";
    const std::string out2 = "acceptance_run2.json";
    const std::string cmd1 = "\"" + cli + "\" suite all --n 4 --seed 0 > " + out1;
    const std::string cmd2 = "\"" + cli + "\" suite all --n 4 --seed 0 > " + out2;
    const int rc1 = std::system(cmd1.c_str());
    const int rc2 = std::system(cmd2.c_str());
    if (rc1 != 0 || rc2 != 0) {
      d = "CLI exited nonzero";
      return false;
    }
    const std::string a = slurp(out1), b = slurp(out2);
    if (a.empty() || a != b) {
      d = "outputs differ between runs";
      return false;
    }
    d = "exit 0, byte-identical across runs";
    return true;
  });

  int failures = 0;
  for (const Criterion& c : results)
    if (!c.pass) ++failures;
  std::printf("%d/%zu criteria passed\n", int(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
