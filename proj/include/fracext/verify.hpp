#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracext/weighted_calculus.hpp"

namespace fracext {

const std::vector<std::string>& check_names();

struct VerifyConfig {
  std::vector<double> s_values{0.25, 0.5, 0.75, 1.5, 2.5, 3.5};
  std::vector<double> lambdas{0.5, 1.0, 4.0, 10.0};
  std::vector<std::string> checks;  // empty = all
  std::optional<double> tol;        // overrides every shipped tolerance
  unsigned threads = 0;             // 0 = FRACEXT_THREADS or hardware concurrency
};

// Reports for one check at one order. Checks that do not depend on lambda
// run once per order, at the first lambda of the matrix.
std::vector<CheckReport> run_check(const std::string& name, double s, const std::vector<double>& lambdas,
                                   std::optional<double> tol);

// Ordered by (s, check index) regardless of scheduling.
std::vector<CheckReport> run_verify(const VerifyConfig& config);

unsigned thread_budget(unsigned requested);

}  // namespace fracext
