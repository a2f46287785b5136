#pragma once

// Desk-scale acceptance suite. Each criterion produces a JSON payload that is
// a deterministic function of the seed; wall time is measured separately.

#include <cstdint>
#include <string>
#include <vector>

#include "subbergman/report_json.hpp"

namespace subbergman {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;        // the numerical checks held
  bool within_budget = false;  // wall time under budget_seconds
  bool passed = false;         // correct && within_budget
  std::string summary;         // deterministic; timing is reported separately
  json payload;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs one of criteria 1..10. Criterion 11 (determinism) needs the others and
/// is only available through run_acceptance.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// All criteria; 1..10 run in parallel (SUBBERGMAN_THREADS), 11 re-runs the
/// seeded ones and compares payload bytes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

json acceptance_payload(const std::vector<CriterionResult>& results);

}  // namespace subbergman
