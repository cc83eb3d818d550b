#pragma once

// End-to-end verification: every release gate the project promises, runnable
// at full scale (the acceptance configuration) or at a reduced quick scale.
// Each check is independent and reports a pass flag plus measured numbers.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cubesect::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string details;
};

struct Options {
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 picks the hardware concurrency
  bool full = true;      // quick mode shrinks samples and skips the two
                         // slow-convergence checks
  std::string cli_path;  // binary exercised by the reproducibility check
};

using Progress = std::function<void(const CheckResult&)>;

// Runs the suite in order, invoking `progress` after each check. A check
// that throws is reported as failed with the exception text, never escapes.
std::vector<CheckResult> run_checks(const Options& opts,
                                    const Progress& progress = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cubesect::verify
