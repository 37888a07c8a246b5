#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qnio {

enum class Scale { Mini, Full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // seconds
};

inline constexpr int kLibraryCriteria = 10;

CheckResult run_criterion(int id, Scale scale);
std::vector<CheckResult> run_selftest(Scale scale, const std::function<void(const CheckResult&)>& progress = {});

}  // namespace qnio
