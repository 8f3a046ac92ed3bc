// Acceptance battery: one pass/fail line per criterion.
//   prodlab_acceptance [--smoke] [--seed N] [id ...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "prodlab/error.hpp"
#include "prodlab/suite.hpp"

int main(int argc, char** argv) {
  prodlab::SuiteLevel level = prodlab::SuiteLevel::Full;
  std::uint64_t seed = 1;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--smoke") {
      level = prodlab::SuiteLevel::Smoke;
    } else if (a == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else {
      ids.push_back(std::stoi(a));
    }
  }
  if (ids.empty())
    for (int id = 1; id <= prodlab::kCriterionCount; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    prodlab::CriterionResult r;
    try {
      r = prodlab::run_criterion(id, level, seed);
    } catch (const std::exception& e) {
      r.id = id;
      r.summary = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %02d %s  %s: %s [%.1f s]\n", id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.summary.c_str(), secs);
    std::fflush(stdout);
    failed += !r.passed;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
