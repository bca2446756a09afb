#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecw {

/// Configuration shared by the verification suites; identical configs give
/// byte-identical reports.
struct SuiteConfig {
  std::uint64_t seed = 1;
  int samples = 0;  // 0 = per-suite default
  int p_max = 3;
  bool inject_sign_defect = false;  // test hook: corrupts the insertion sign
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> lines;  // "pass: ..." / "FAIL: ..." per identity
  double seconds = 0.0;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const SuiteConfig& cfg);

/// Render results; deterministic (no timings in the bytes).
std::string format_report(const std::vector<SuiteResult>& results, const std::string& format);

}  // namespace ecw
