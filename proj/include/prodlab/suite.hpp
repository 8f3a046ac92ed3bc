#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prodlab {

enum class SuiteLevel { Smoke, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;
  /// JSON object with the measured quantities.
  std::string details;
};

constexpr int kCriterionCount = 15;

/// Runs one acceptance criterion (1..15). Criterion 15 runs the full
/// battery twice and compares the report bytes.
CriterionResult run_criterion(int id, SuiteLevel level, std::uint64_t seed);

struct SuiteOutcome {
  std::string report;  // canonical JSON text
  std::vector<int> failed;
};

/// Criteria 1..14 at the given level, as one JSON report.
SuiteOutcome run_suite(SuiteLevel level, std::uint64_t seed);

}  // namespace prodlab
