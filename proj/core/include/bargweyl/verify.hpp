#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bargweyl {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
  bool expected_divergence = false;  // divergence observed where theory predicts it
  std::vector<std::string> warnings;
};

struct VerifyConfig {
  double h = 0.1;
  std::uint64_t seed = 20260810ull;
  bool quick = false;  // reduced sample counts for unit-test use
  int N = 12;
  int M = 128;
  double s = 2.0;
  double C = 50.0;
  bool include_slow = true;  // the windowed-fit checks
};

// every module's invariant suite; names are "<module>.<invariant>"
std::vector<CheckResult> run_verify_checks(const VerifyConfig& cfg);

// single named check (throws if unknown)
CheckResult run_verify_check(const std::string& name, const VerifyConfig& cfg);

std::vector<std::string> verify_check_names();

}  // namespace bargweyl
