#pragma once

#include <optional>
#include <span>
#include <vector>

#include "watchroute/geometry.hpp"

namespace watchroute {

/// Targets plus a chain-visible curve; robots move at unit speed so length
/// and measurement time share units.
struct ChainInstance {
  SimplePolygon polygon;
  Curve curve;
  std::vector<Point> targets;
  std::size_t m = 1;
  double t_m = 0.0;
};

/// A sub-path of the curve. An idle robot has no viewpoints and cost 0.
struct PathOnCurve {
  double s_start = 0.0;
  double s_end = 0.0;
  std::vector<double> viewpoints;  // sorted arc lengths, both endpoints included
  double cost = 0.0;

  bool idle() const { return viewpoints.empty(); }
};

struct RoutePlan {
  std::vector<PathOnCurve> paths;  // left to right, exactly m entries
  double makespan = 0.0;
};

struct EndpointSets {
  std::vector<double> right;  // R: sorted distinct right endpoints
  std::vector<double> left;   // L: sorted distinct left endpoints
};

EndpointSets candidate_endpoints(std::span<const CurveInterval> intervals);

struct SinglePathResult {
  std::vector<double> viewpoints;
  double cost = 0.0;
};

/// Fewest viewpoints on [i, j] that include i and j and stab every
/// interval. Each interval must intersect [i, j].
SinglePathResult optimal_single_path(double i, double j, std::span<const CurveInterval> intervals,
                                     double t_m);

/// Some interval lies strictly between `j_prev` and `i` (endpoints excluded).
bool blocking_indicator(std::span<const CurveInterval> intervals, double j_prev, double i);

/// Per-target visibility intervals; throws DomainError on a chain
/// violation and InfeasibleError (with target ids) on an unseen target.
std::vector<CurveInterval> target_intervals(const ChainInstance& instance);

/// Optimal min-makespan plan over intervals already extracted from a curve.
RoutePlan solve_chain_intervals(std::span<const CurveInterval> intervals, std::size_t m,
                                double t_m);

RoutePlan solve_chain(const ChainInstance& instance);

/// Cost of a path with the given viewpoint positions.
double path_cost(double s_start, double s_end, std::size_t viewpoint_count, double t_m);

}  // namespace watchroute
