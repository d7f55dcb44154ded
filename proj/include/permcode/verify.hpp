#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace permcode {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0;
};

/// Desk-scale invariant checks across every module (a few seconds).
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);
std::string format_check_table(const std::vector<CheckResult>& results);

}  // namespace permcode
