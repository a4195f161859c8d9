#include <cstdio>
#include <cstring>
#include <string>

#include "checks.hpp"

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
int main(int argc, char** argv) {
  ulpar::checks::CheckOptions opts;
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
  }
  int failures = 0;
  for (const auto& info : ulpar::checks::registry()) {
    if (info.criterion == 0) continue;
    if (!only.empty() && only != info.id && only != std::to_string(info.criterion)) continue;
    const auto r = ulpar::checks::run_check(info, opts);
    std::printf("%s criterion %2d %-20s %.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.criterion, r.id.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
