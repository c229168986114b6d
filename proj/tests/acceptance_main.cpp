// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include "cactus/acceptance.hpp"

#include <cstdio>

int main() {
  cactus::SuiteOptions options;
  int failures = 0;
  cactus::run_suite(options, [&](const cactus::CriterionResult& r) {
    std::printf("[%s] criterion %2d  %-22s %8.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  });
  std::printf("%d/%d criteria passed\n", cactus::kCriteria - failures, cactus::kCriteria);
  return failures == 0 ? 0 : 1;
}
