#pragma once

#include <string>
#include <vector>

namespace blinksig::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
};

/// Runs every acceptance criterion in order. Criterion 8 audits the scans
/// produced while running criteria 1-4.
std::vector<CriterionResult> run_all();

/// "[PASS] 3 title: detail" style line.
std::string format(const CriterionResult& r);

}  // namespace blinksig::acceptance
