#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "watchroute/chain_dp.hpp"
#include "watchroute/geometry.hpp"
#include "watchroute/gtsp_reduction.hpp"

/// Slow reference implementations. Geometry here is written from scratch
/// against the raw vertex list; only Point is shared with the library.
namespace watchroute::oracle {

/// Closed-segment visibility in the closed polygon given by `ring`.
bool sees(std::span<const Point> ring, Point p, Point q, double eps = kDefaultEps);

/// Winding-number containment, boundary included.
bool inside(std::span<const Point> ring, Point p, double eps = kDefaultEps);

/// Arc-length interval of curve positions seeing x, found by sampling the
/// curve at `grid` points and bisecting each visibility change. Empty
/// optional when no sample sees x.
std::optional<CurveInterval> sampled_interval(std::span<const Point> ring,
                                              std::span<const Point> curve, Point x,
                                              std::size_t grid, std::size_t target_id = 0);

/// Optimal makespan by enumerating viewpoint subsets of the interval
/// endpoints and every split into at most m consecutive paths.
/// Limits: at most 6 targets, m <= 3.
double brute_chain(const ChainInstance& instance, std::size_t grid = 2000);
double brute_chain_intervals(std::span<const CurveInterval> intervals, std::size_t m, double t_m);
/// Same enumeration on one thread.
double brute_chain_intervals_serial(std::span<const CurveInterval> intervals, std::size_t m,
                                    double t_m);

struct StreetOracleResult {
  bool feasible = false;
  double makespan = 0.0;  // optimum over grid-restricted plans
  double gap = 0.0;       // one grid step plus t_m
};

/// Optimal makespan over plans whose path ends and viewpoints lie on a
/// uniform grid of `grid` curve positions, covering every witness point.
StreetOracleResult brute_street(std::span<const Point> ring, std::span<const Point> curve,
                                std::span<const Point> witnesses, std::size_t m, double t_m,
                                std::size_t grid = 400);
StreetOracleResult brute_street_serial(std::span<const Point> ring, std::span<const Point> curve,
                                       std::span<const Point> witnesses, std::size_t m,
                                       double t_m, std::size_t grid = 400);

/// Exact minimum total length by enumerating minimal covering viewpoint
/// sets, robot assignments, visit orders and finish assignments.
/// Limits: |V| <= 8, m <= 2.
double brute_gtsp(const GtspInstance& g);

/// Dijkstra on the visibility graph over all polygon vertices plus s, t.
double brute_geodesic(std::span<const Point> ring, Point s, Point t, double eps = kDefaultEps);

struct RaySample {
  Point direction;  // unit
  double distance = 0.0;
};

/// First boundary hit along `rays` seeded random directions from p. Rays
/// leaving the polygon immediately report distance 0.
std::vector<RaySample> raycast_vp(std::span<const Point> ring, Point p, std::size_t rays,
                                  std::uint64_t seed, double eps = kDefaultEps);

}  // namespace watchroute::oracle
