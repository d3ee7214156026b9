#pragma once

// The acceptance criteria as runnable suites, shared by the test binary and
// `clustercat verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace clustercat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // 0: no time limit
};

// Suite names in criterion order, e.g. "classification", "euler-identity".
const std::vector<std::string>& criterion_names();
// 1-based id for a suite name or its number; 0 if unknown.
int criterion_id(std::string_view name);

// Runs one criterion; exceptions are reported as failures. A criterion with a
// time budget fails when it overruns.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

// "PASS  3 radical-lattice  (0.01s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace clustercat
