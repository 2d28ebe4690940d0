#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spinc {

struct VerifyConfig {
  std::uint64_t seed = 1;
  int samples = 10000;
  std::optional<double> tol; // replaces every residual threshold
  int grid_n = 32;           // grid of the analysis-level suites
  int refine_depth = 20;
  int loop_points = 1024;
  unsigned threads = 0;
  std::vector<std::string> only; // run just these suites (empty: all)
};

struct SuiteResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<SuiteResult> suites;
  bool all_pass() const;
};

// Names of the identity suites in execution order.
std::vector<std::string> suite_names();
// Throws std::invalid_argument for samples < 1 or an unknown suite name.
VerifyReport run_verify(const VerifyConfig& cfg);

} // namespace spinc
