#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fermifuse {

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::pair<std::string, double>> thresholds;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  int n = 4;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::vector<TrialResult> trials;
  int passed = 0;
  int failed = 0;
  double max_residual = 0.0;
  std::int64_t wall_time_ms = 0;

  bool pass() const { return failed == 0; }
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Runs one named suite.  `trials` scales the randomized parts; deterministic
/// for fixed (name, n, seed, tol, trials).  Wall time is only recorded when
/// `timings` is set; the default output is byte-stable across runs.
SuiteReport run_suite(const std::string& name, int n, std::uint64_t seed, double tol,
                      int trials, bool timings);

std::string report_to_json(const SuiteReport& report);
std::string reports_to_json(const std::vector<SuiteReport>& reports);

}  // namespace fermifuse
