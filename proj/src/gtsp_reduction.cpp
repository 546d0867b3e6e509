#include "watchroute/gtsp_reduction.hpp"

#include <algorithm>
#include <chrono>

#include "watchroute/errors.hpp"
#include "watchroute/log.hpp"

namespace watchroute {

std::string to_string(DepotKind kind) {
  switch (kind) {
    case DepotKind::kSameDepot: return "same-depot";
    case DepotKind::kSameFinish: return "same-finish";
    case DepotKind::kInterchangeable: return "interchangeable";
  }
  return "?";
}

DepotKind depot_kind_from_string(const std::string& s) {
  if (s == "same-depot") return DepotKind::kSameDepot;
  if (s == "same-finish") return DepotKind::kSameFinish;
  if (s == "interchangeable") return DepotKind::kInterchangeable;
  throw DomainError("unknown depot scenario '" + s + "'");
}

std::string to_string(TspSolverKind s) {
  switch (s) {
    case TspSolverKind::kAuto: return "auto";
    case TspSolverKind::kHeldKarp: return "held-karp";
    case TspSolverKind::kBranchAndBound: return "bnb";
  }
  return "?";
}

TspSolverKind tsp_solver_from_string(const std::string& s) {
  if (s == "auto") return TspSolverKind::kAuto;
  if (s == "held-karp") return TspSolverKind::kHeldKarp;
  if (s == "bnb") return TspSolverKind::kBranchAndBound;
  throw DomainError("unknown solver '" + s + "'");
}

GtspInstance build_gtsp(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                        std::span<const Point> targets, const DepotScenario& scenario,
                        std::size_t m) {
  if (m == 0) throw DomainError("build_gtsp: m must be positive");
  const std::size_t want = scenario.kind == DepotKind::kSameDepot    ? 1
                           : scenario.kind == DepotKind::kSameFinish ? m + 1
                                                                     : m;
  if (scenario.depots.size() != want) {
    throw DomainError("build_gtsp: scenario " + to_string(scenario.kind) + " with m=" +
                      std::to_string(m) + " needs " + std::to_string(want) + " depots, got " +
                      std::to_string(scenario.depots.size()));
  }
  for (const Point& d : scenario.depots) {
    if (!polygon.contains(d)) throw DomainError("build_gtsp: depot outside the polygon");
  }

  std::vector<std::vector<std::size_t>> raw(targets.size());
  std::vector<char> used(viewpoints.size(), 0);
  std::vector<std::size_t> unseen;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t v = 0; v < viewpoints.size(); ++v) {
      if (sees(polygon, viewpoints[v], targets[t])) {
        raw[t].push_back(v);
        used[v] = 1;
      }
    }
    if (raw[t].empty()) unseen.push_back(t);
  }
  if (!unseen.empty()) {
    throw InfeasibleError("target " + std::to_string(unseen.front()) + " is seen by no viewpoint",
                          unseen);
  }

  GtspInstance g;
  g.scenario = scenario;
  g.m = m;
  std::vector<std::size_t> remap(viewpoints.size(), 0);
  for (std::size_t v = 0; v < viewpoints.size(); ++v) {
    if (!used[v]) continue;
    remap[v] = g.viewpoints.size();
    g.viewpoints.push_back(viewpoints[v]);
    g.original_index.push_back(v);
  }
  for (const auto& c : raw) {
    std::vector<std::size_t> cluster;
    for (std::size_t v : c) cluster.push_back(remap[v]);
    g.clusters.push_back(std::move(cluster));
  }

  for (std::size_t r = 0; r < m; ++r) {
    switch (scenario.kind) {
      case DepotKind::kSameDepot:
        g.start_depots.push_back(scenario.depots[0]);
        g.finish_depots.push_back(scenario.depots[0]);
        break;
      case DepotKind::kSameFinish:
        g.start_depots.push_back(scenario.depots[r]);
        g.finish_depots.push_back(scenario.depots[m]);
        break;
      case DepotKind::kInterchangeable:
        g.start_depots.push_back(scenario.depots[r]);
        g.finish_depots.push_back(scenario.depots[r]);
        break;
    }
  }

  const ShortestPathMap paths(polygon);
  const std::size_t n = g.viewpoints.size();
  g.cost.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      g.cost[i][j] = g.cost[j][i] = paths.distance(g.viewpoints[i], g.viewpoints[j]);
    }
  }
  g.start_cost.assign(m, std::vector<double>(n, 0.0));
  g.finish_cost.assign(m, std::vector<double>(n, 0.0));
  g.depot_cost.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t v = 0; v < n; ++v) {
      g.start_cost[r][v] = paths.distance(g.start_depots[r], g.viewpoints[v]);
      g.finish_cost[r][v] = paths.distance(g.viewpoints[v], g.finish_depots[r]);
    }
    // Idle robots stay put except when every depot must receive a robot.
    if (scenario.kind == DepotKind::kInterchangeable) {
      for (std::size_t j = 0; j < m; ++j) {
        g.depot_cost[r][j] = paths.distance(g.start_depots[r], g.finish_depots[j]);
      }
    }
  }
  return g;
}

GtspSolution solve_gtsp(const SimplePolygon& polygon, std::span<const Point> viewpoints,
                        std::span<const Point> targets, const DepotScenario& scenario,
                        std::size_t m, const GtspSolveOptions& options) {
  GtspSolution out;
  out.instance = build_gtsp(polygon, viewpoints, targets, scenario, m);
  out.graph = noon_bean_transform(out.instance, options.noon_bean);
  const AtspInstance directed = out.graph.atsp();

  SymmetricTsp sym;
  const AtspInstance* inst = &directed;
  if (options.symmetrize) {
    sym = karp_symmetrize(directed);
    inst = &sym.instance;
  }
  TspSolverKind kind = options.solver;
  if (kind == TspSolverKind::kAuto) {
    kind = inst->n() <= options.held_karp_cap ? TspSolverKind::kHeldKarp
                                              : TspSolverKind::kBranchAndBound;
  }
  std::vector<std::size_t> order;
  if (kind == TspSolverKind::kHeldKarp) {
    order = held_karp(*inst, options.held_karp_cap).order;
    out.solver = "held-karp";
  } else {
    const BnbResult r = branch_and_bound(*inst, {options.time_budget_s});
    out.search_nodes = r.nodes;
    out.solver = "bnb";
    if (!r.optimal) {
      const double offset = options.symmetrize ? sym.offset : 0.0;
      const double penalty = out.graph.uniform_penalty_total();
      throw TimeoutError("solve_gtsp: branch and bound hit the time budget",
                         r.lower_bound - offset - penalty, r.tour.cost - offset - penalty);
    }
    order = r.tour.order;
  }
  if (options.symmetrize) {
    order = desymmetrize_tour(directed.n(), order);
    out.solver += "+karp";
  }
  out.tour = order;
  out.plan = decode_tour(out.instance, out.graph, order, polygon);
  log::debug("solve_gtsp: {} nodes, tour cost {:.9g}, total {:.9g}", directed.n(),
             out.plan.tour_cost, out.plan.total_cost);
  return out;
}

}  // namespace watchroute
