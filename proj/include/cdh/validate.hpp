// validate.hpp — the invariant suite behind `cdh validate`.

#pragma once

#include <string>
#include <vector>

namespace cdh::cli {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationOptions {
  double delta = 1.0;
  double omega = 2.0;
  bool quick = false;
  /// Added to one diagonal entry of the closed-form Rabi matrix before the
  /// cross-builder comparison (fault injection).
  double perturb = 0.0;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);

/// {"passed": bool, "checks": [{name, measured, threshold, passed, detail}]}.
std::string validation_report_json(const std::vector<CheckResult>& checks);

}  // namespace cdh::cli
