#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hpcause::cli {

struct SelftestOptions {
  int scale = 1;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t agreed = 0;
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  std::vector<std::string> mismatches;

  bool passed() const {
    for (const auto& s : suites)
      if (s.agreed != s.checked) return false;
    return true;
  }
};

// Engine against the brute-force reference on random models, and both
// reduction round trips on random CQBFs. 10 * scale instances per suite.
SelftestReport run_selftest(const SelftestOptions& opts);

}  // namespace hpcause::cli
