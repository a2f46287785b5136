// Runs the desk-scale acceptance criteria and prints one line per criterion.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "subbergman/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240607;
  bool dump = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--json"))
      dump = true;
  }
  const auto results = subbergman::run_acceptance(seed);
  int failed = 0;
  for (const auto& r : results) {
    failed += !r.passed;
    std::printf("criterion %2d %s  %-30s %s [%.2f s", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.summary.c_str(), r.seconds);
    if (r.id < subbergman::kCriterionCount) std::printf(" / budget %.0f s", r.budget_seconds);
    std::printf("]\n");
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n", static_cast<int>(results.size()) - failed, results.size(),
              static_cast<unsigned long long>(seed));
  if (dump) std::printf("%s\n", subbergman::acceptance_payload(results).dump(2).c_str());
  return failed == 0 ? 0 : 1;
}
