#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "watchroute/io.hpp"

namespace watchroute {

struct VerifyOptions {
  std::size_t samples = 100000;   // street coverage samples
  double min_coverage = 0.999;
  double cost_tol = 1e-6;
  bool oracle = false;
  std::size_t oracle_grid = 200;  // brute_street curve grid
};

struct VerifyReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::size_t> uncovered;  // target ids
  double reported = 0.0;               // makespan or total_cost from the document
  double recomputed = 0.0;
  std::optional<double> coverage;      // street only
  std::optional<double> oracle;        // brute-force optimum
  std::optional<double> oracle_gap;    // reported - oracle
  std::optional<double> oracle_slack;  // street: discretization gap of the oracle

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
  /// "PASS ..." or "FAIL ..." lines, one per finding.
  std::string summary() const;
};

/// Rechecks a solution using only its embedded instance.
VerifyReport verify_solution(const SolutionDocument& solution, const VerifyOptions& options = {});

}  // namespace watchroute
