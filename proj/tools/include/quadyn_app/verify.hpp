#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace quadyn::app {

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::function<CheckOutcome()> check;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// The reproduction checks, numbered 1..11. Every tolerance is fixed here.
const std::vector<Criterion>& verification_criteria();

/// Runs one check; an escaping exception counts as a failure.
CriterionResult run_criterion(const Criterion& c);

std::vector<CriterionResult> run_all_criteria();

/// Prints a table (or a JSON array); returns 0 iff everything passed, else 1.
int report_verification(const std::vector<CriterionResult>& results, std::ostream& out, bool json);

}  // namespace quadyn::app
