#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "watchroute/generators.hpp"

namespace watchroute {

enum class SweepKind { kRobots, kTargets };

std::string to_string(SweepKind s);
SweepKind sweep_from_string(const std::string& s);

struct BatchOptions {
  GenOptions base;  // env, kind, targets, m, t_m, scenario, master seed
  SweepKind sweep = SweepKind::kRobots;
  std::size_t from = 1;
  std::size_t to = 5;
  std::size_t trials = 50;
  double rel_tol = 0.05;  // street only
  bool parallel = true;
};

struct BatchRow {
  std::size_t value = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double mean_runtime = 0.0;
  std::vector<double> objectives;  // per trial
};

/// Trial t always uses instance seed mix_seed(master, t), so every sweep
/// value sees the same environments and, for target sweeps, nested target
/// sets. Objectives do not depend on the thread count.
std::vector<BatchRow> run_batch(const BatchOptions& options);
std::vector<BatchRow> run_batch_serial(const BatchOptions& options);

/// Header plus one line per row: <sweep>,mean,stddev,mean_runtime.
std::string batch_csv(const BatchOptions& options, const std::vector<BatchRow>& rows);

/// Parses "a..b" (inclusive).
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);

}  // namespace watchroute
