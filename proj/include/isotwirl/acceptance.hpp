#pragma once

#include <string>
#include <vector>

namespace isotwirl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::vector<std::string> details;

  std::string line() const;  // "CRITERION n PASS|FAIL name (t s)"
};

constexpr int kNumCriteria = 11;

CriterionResult run_criterion(int id, int threads = 1);

}  // namespace isotwirl
