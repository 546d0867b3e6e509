#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "watchroute/geometry.hpp"
#include "watchroute/tsp_solver.hpp"

namespace watchroute {

enum class DepotKind { kSameDepot, kSameFinish, kInterchangeable };

/// Depot points: SameDepot takes 1 point, SameFinish m+1 (m starts, then
/// the shared finish), Interchangeable m (robot r starts at depot r; every
/// depot receives exactly one robot at the end).
struct DepotScenario {
  DepotKind kind = DepotKind::kSameDepot;
  std::vector<Point> depots;
};

std::string to_string(DepotKind kind);
DepotKind depot_kind_from_string(const std::string& s);

struct GtspInstance {
  std::vector<Point> viewpoints;           // isolated viewpoints removed
  std::vector<std::size_t> original_index; // into the caller's viewpoint list
  std::vector<std::vector<double>> cost;   // geodesic lengths
  std::vector<std::vector<std::size_t>> clusters;  // per target, ascending
  DepotScenario scenario;
  std::size_t m = 1;
  std::vector<Point> start_depots;   // per robot
  std::vector<Point> finish_depots;  // per finish slot
  std::vector<std::vector<double>> start_cost;   // [robot][viewpoint]
  std::vector<std::vector<double>> finish_cost;  // [slot][viewpoint]
  /// Cost of an idle robot moving from start r to finish slot j.
  std::vector<std::vector<double>> depot_cost;
};

/// Throws InfeasibleError (with target ids) when a target is seen by no
/// viewpoint and DomainError on a malformed depot list.
GtspInstance build_gtsp(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                        std::span<const Point> targets, const DepotScenario& scenario,
                        std::size_t m);

enum class ArcCategory {
  kForbidden,
  kIntracluster,   // zero-cost cycle arc
  kIntercluster,   // tail-shifted move between viewpoints
  kIntranode,      // tail-shifted, same viewpoint in another cluster
  kDepotOutgoing,  // start depot to a viewpoint copy
  kDepotIncoming,  // tail-shifted copy to finish depot
  kDepotIdle,      // start depot straight to a finish depot
  kDepotReturn,    // finish depot to the next start depot
};

std::string to_string(ArcCategory c);

/// Where the arrival penalty alpha goes.
enum class ArrivalPenalty {
  /// On every arc entering a cluster, so every valid tour pays the same
  /// penalty total and the optimum minimizes length.
  kUniform,
  /// Skips arcs between copies of one viewpoint. Optimal tours then
  /// minimize the number of viewpoint arrivals before length.
  kViewpointArrivals,
};

struct NoonBeanOptions {
  ArrivalPenalty arrival_penalty = ArrivalPenalty::kUniform;
  /// Leave out clusters that contain another cluster (and all but the first
  /// of equal clusters). Any tour through the smaller one already visits
  /// them; decode_tour still credits them.
  bool drop_dominated = true;
};

struct NoonBeanNode {
  enum class Kind { kCopy, kStart, kFinish };
  Kind kind = Kind::kCopy;
  std::size_t viewpoint = 0;  // copies
  std::size_t cluster = 0;    // copies; id in GtspInstance::clusters
  std::size_t depot = 0;      // robot for starts, slot for finishes
};

struct NoonBeanGraph {
  std::vector<NoonBeanNode> nodes;  // copies cluster by cluster, then m starts, then m finishes
  std::vector<std::vector<double>> base;     // travel part of each arc
  std::vector<std::vector<double>> penalty;  // alpha/beta part
  std::vector<std::vector<ArcCategory>> category;
  std::vector<std::size_t> cycle_pred;  // copies only; identity elsewhere
  std::vector<std::size_t> cycle_succ;
  double alpha = 0.0;
  double beta = 0.0;
  double mst_cost = 0.0;
  std::size_t mst_edges = 0;
  std::size_t m = 1;
  std::size_t cluster_count = 0;          // clusters with nodes
  std::vector<std::size_t> kept_clusters; // their ids, ascending

  std::size_t first_start() const { return nodes.size() - 2 * m; }
  std::size_t first_finish() const { return nodes.size() - m; }
  /// base + penalty, kForbidden where no arc exists.
  AtspInstance atsp() const;
  /// Penalty paid by every valid tour under kUniform.
  double uniform_penalty_total() const;
};

NoonBeanGraph noon_bean_transform(const GtspInstance& g, const NoonBeanOptions& options = {});

struct RobotRoute {
  std::size_t start_depot = 0;   // index into scenario depots
  std::size_t finish_depot = 0;  // index into scenario depots
  std::vector<std::size_t> viewpoints;  // instance viewpoint indices, in visit order
  std::vector<std::vector<std::size_t>> credited;  // clusters credited at each visit
  std::vector<Point> polyline;
  double length = 0.0;

  bool idle() const { return viewpoints.empty(); }
};

struct DecodedPlan {
  std::vector<RobotRoute> routes;  // one per robot, by start depot
  double total_cost = 0.0;         // sum of route lengths
  double tour_cost = 0.0;          // including penalties
  double penalty_cost = 0.0;
};

/// Splits a Hamiltonian tour of the graph into robot routes. Throws
/// DecodeError on a tour no valid plan produces.
DecodedPlan decode_tour(const GtspInstance& g, const NoonBeanGraph& nb,
                        std::span<const std::size_t> tour, const SimplePolygon& polygon);

enum class TspSolverKind { kAuto, kHeldKarp, kBranchAndBound };

std::string to_string(TspSolverKind s);
TspSolverKind tsp_solver_from_string(const std::string& s);

struct GtspSolveOptions {
  TspSolverKind solver = TspSolverKind::kAuto;
  std::size_t held_karp_cap = 20;
  double time_budget_s = 60.0;
  /// Solve the two-copy symmetric form instead of the directed instance.
  bool symmetrize = false;
  NoonBeanOptions noon_bean;
};

struct GtspSolution {
  GtspInstance instance;
  NoonBeanGraph graph;
  std::vector<std::size_t> tour;
  DecodedPlan plan;
  std::string solver;
  std::size_t search_nodes = 0;
};

/// Throws TimeoutError with the best bound when branch and bound runs out
/// of time.
GtspSolution solve_gtsp(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                        std::span<const Point> targets, const DepotScenario& scenario,
                        std::size_t m, const GtspSolveOptions& options = {});

}  // namespace watchroute
