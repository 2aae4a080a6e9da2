#pragma once

#include <string>
#include <vector>

#include "formleb/linalg.hpp"

namespace formleb {

struct SelftestReport {
  int golden_passed = 0;
  int golden_total = 0;
  int property_passed = 0;
  int property_total = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Re-runs the worked 3x3 and C^2 examples and a seeded sample of the
/// decomposition invariants.
SelftestReport run_selftest(const Tolerance& tol = {}, unsigned seed = 20180917u);

}  // namespace formleb
