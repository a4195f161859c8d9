#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ulpar::checks {

struct CheckOptions {
  bool ledger_fault = false;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string id;
  int criterion = 0;  // 0 for checks outside the numbered acceptance list
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
};

struct CheckInfo {
  std::string id;
  int criterion;
  std::string title;
  double budget;  // seconds
  bool fast;      // member of the fast suite
  std::function<CheckResult(const CheckOptions&)> run;
};

const std::vector<CheckInfo>& registry();

// Runs one check, timing it and failing it when it exceeds its budget or throws.
CheckResult run_check(const CheckInfo& info, const CheckOptions& opts);

// suite: "fast", "full" or "acceptance" (the twelve numbered criteria).
std::vector<CheckResult> run_suite(const std::string& suite, const CheckOptions& opts,
                                   const std::function<void(const CheckResult&)>& progress = {});

}  // namespace ulpar::checks
