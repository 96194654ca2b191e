#pragma once

#include <string>
#include <vector>

#include "pnlv/types.hpp"

namespace pnlv {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  double seconds = 0.0;
  bool passed() const;
};

/// Suites in acceptance order.
std::vector<std::string> verify_suite_names();

/// Run one suite; every tolerance is pinned in the implementation.
VerifyReport run_verify_suite(const std::string& suite,
                              unsigned long long randomSeed = 20240817ULL);

}  // namespace pnlv
