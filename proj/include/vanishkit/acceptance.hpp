#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vanishkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool check_passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;

  bool passed() const { return check_passed && seconds < budget_seconds; }
};

/// VANISHKIT_SEED if set and numeric, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 20260101);

CriterionResult run_criterion(int id, std::uint64_t seed);
/// Criteria 1 to 10 in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);
/// "[PASS] 4 ex_a vanishing (0.62 s / 10 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace vanishkit
