#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "watchroute/chain_dp.hpp"
#include "watchroute/geometry.hpp"

namespace watchroute {

/// Arc-length tolerance for "strictly to the right" comparisons.
inline constexpr double kArcEps = 1e-9;

/// Witness intervals on a curve of known length. Every witness must be
/// stabbed by some viewpoint for the polygon to count as covered.
class IntervalCover {
 public:
  IntervalCover(std::vector<CurveInterval> intervals, double curve_length, double eps = kArcEps);

  const std::vector<CurveInterval>& intervals() const noexcept { return intervals_; }
  /// Intervals containing no other interval, sorted by both endpoints.
  const std::vector<CurveInterval>& minimal() const noexcept { return minimal_; }
  double curve_length() const noexcept { return length_; }
  double eps() const noexcept { return eps_; }

  /// First position whose prefix already sees everything it ever will.
  double first_viewpoint() const;
  /// Smallest right endpoint among intervals lying entirely right of p.
  /// nullopt stands for end-of-curve.
  std::optional<double> limit_point(double p) const;
  /// Greedy chain g1, lp(g1), ... ; minimum cardinality stabbing set.
  std::vector<double> min_viewpoints() const;
  bool covered_by(std::span<const double> viewpoints) const;
  /// Ids of intervals not stabbed by `viewpoints`.
  std::vector<std::size_t> uncovered(std::span<const double> viewpoints) const;

 private:
  std::vector<CurveInterval> intervals_;
  std::vector<CurveInterval> minimal_;
  double length_;
  double eps_;
};

enum class GuessStatus { kSuccess, kFailure };

struct GuessResult {
  GuessStatus status = GuessStatus::kFailure;
  std::vector<PathOnCurve> paths;

  bool success() const { return status == GuessStatus::kSuccess; }
};

/// One round of path construction for makespan guess `guess`.
/// `g_star` is the precomputed greedy viewpoint chain.
GuessResult street_subroutine(const IntervalCover& cover, std::span<const double> g_star,
                              double t_m, double guess, std::size_t m);

struct SearchStep {
  double guess = 0.0;
  bool success = false;
};

struct StreetSearch {
  RoutePlan plan;
  std::vector<double> g_star;
  std::vector<SearchStep> trace;
  double guess = 0.0;  // smallest successful guess
};

/// Binary search on the guess over [t_m, L + (|G*|+2) t_m].
StreetSearch solve_street_intervals(const IntervalCover& cover, std::size_t m, double t_m,
                                    double rel_tol);

struct StreetInstance {
  SimplePolygon polygon;
  Curve curve;
  std::size_t m = 1;
  double t_m = 1.0;
};

struct StreetOptions {
  double rel_tol = 0.05;
  std::size_t interior_witnesses = 2000;
  std::size_t boundary_witnesses = 200;
  std::size_t refine_samples = 20000;
  std::size_t refine_rounds = 6;
  std::size_t verify_samples = 100000;
  std::uint64_t seed = 1;
};

/// Witness points of a polygon and their visibility intervals on the curve.
class StreetModel {
 public:
  StreetModel(const SimplePolygon& polygon, const Curve& curve, const StreetOptions& options);

  const std::vector<Point>& witnesses() const noexcept { return witnesses_; }
  const IntervalCover& cover() const noexcept { return cover_; }
  /// Appends witnesses and recomputes their intervals.
  void add_witnesses(std::span<const Point> points);
  /// Points of `samples` not seen from any of `viewpoints`.
  std::vector<Point> unseen(std::span<const Point> viewpoints, std::span<const Point> samples) const;

 private:
  SimplePolygon polygon_;
  Curve curve_;
  std::vector<Point> witnesses_;
  IntervalCover cover_;
};

/// Default witness set: vertices, boundary samples, window endpoints
/// behind reflex vertices, and seeded interior samples.
std::vector<Point> street_witness_points(const SimplePolygon& polygon,
                                         const StreetOptions& options);

/// Visibility intervals of `points`; parallel when OpenMP is enabled.
/// Throws InfeasibleError listing points unseen from the curve.
std::vector<CurveInterval> witness_intervals(const SimplePolygon& polygon, const Curve& curve,
                                             std::span<const Point> points);
std::vector<CurveInterval> witness_intervals_serial(const SimplePolygon& polygon,
                                                    const Curve& curve,
                                                    std::span<const Point> points);

struct StreetSolution {
  RoutePlan plan;
  std::vector<double> g_star;
  std::vector<SearchStep> trace;
  double guess = 0.0;
  std::vector<Point> witnesses;
  double coverage = 0.0;  // Monte-Carlo fraction at options.verify_samples
};

StreetSolution solve_street(const StreetInstance& instance, const StreetOptions& options = {});

}  // namespace watchroute
