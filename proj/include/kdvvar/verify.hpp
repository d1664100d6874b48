#pragma once

#include <string>
#include <vector>

namespace kdv::verify {

enum class Level { fast, full };

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// "A1" … "A8".
const std::vector<std::string>& check_ids();

/// Runs one acceptance check; InvalidInput for an unknown id.
CheckResult run_check(const std::string& id);

/// fast: A1–A5 and A7. full: all eight.
std::vector<CheckResult> run_verify(Level level);

}  // namespace kdv::verify
