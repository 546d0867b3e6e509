#include "watchroute/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "watchroute/errors.hpp"
#include "watchroute/oracles.hpp"

namespace watchroute {

namespace {

constexpr double kArcTol = 1e-9;

void check_paths(const SolutionDocument& sol, double length, double t_m, VerifyReport& rep) {
  if (sol.paths.size() != sol.instance.m) {
    rep.fail("plan has " + std::to_string(sol.paths.size()) + " paths, expected m=" +
             std::to_string(sol.instance.m));
  }
  double makespan = 0.0;
  for (std::size_t r = 0; r < sol.paths.size(); ++r) {
    const PathOnCurve& p = sol.paths[r];
    const std::string who = "path " + std::to_string(r);
    if (p.idle()) {
      if (p.cost != 0.0) rep.fail(who + ": idle path with nonzero cost");
      continue;
    }
    if (p.s_start > p.s_end + kArcTol || p.s_start < -kArcTol || p.s_end > length + kArcTol) {
      rep.fail(who + ": endpoints outside the curve");
    }
    if (!std::is_sorted(p.viewpoints.begin(), p.viewpoints.end())) rep.fail(who + ": viewpoints unsorted");
    if (std::abs(p.viewpoints.front() - p.s_start) > kArcTol ||
        std::abs(p.viewpoints.back() - p.s_end) > kArcTol) {
      rep.fail(who + ": path endpoints are not viewpoints");
    }
    const double cost = path_cost(p.s_start, p.s_end, p.viewpoints.size(), t_m);
    if (std::abs(cost - p.cost) > 1e-6 * std::max(1.0, cost)) {
      rep.fail(who + ": cost " + std::to_string(p.cost) + " recomputes to " + std::to_string(cost));
    }
    makespan = std::max(makespan, cost);
  }
  rep.recomputed = makespan;
}

void verify_chain(const SolutionDocument& sol, const VerifyOptions& opt, VerifyReport& rep) {
  const ChainInstance inst = chain_instance_of(sol.instance);
  const std::vector<CurveInterval> intervals = target_intervals(inst);
  check_paths(sol, inst.curve.length(), inst.t_m, rep);
  for (const CurveInterval& iv : intervals) {
    const bool seen = std::any_of(sol.paths.begin(), sol.paths.end(), [&](const PathOnCurve& p) {
      return std::any_of(p.viewpoints.begin(), p.viewpoints.end(),
                         [&](double s) { return iv.contains(s, kArcTol); });
    });
    if (!seen) {
      rep.uncovered.push_back(iv.target_id);
      rep.fail("target " + std::to_string(iv.target_id) + " is not seen by any viewpoint");
    }
  }
  if (opt.oracle) rep.oracle = oracle::brute_chain(inst);
}

void verify_street(const SolutionDocument& sol, const VerifyOptions& opt, VerifyReport& rep) {
  const StreetInstance inst = street_instance_of(sol.instance);
  check_paths(sol, inst.curve.length(), inst.t_m, rep);
  std::vector<Point> pts;
  for (const PathOnCurve& p : sol.paths) {
    for (double s : p.viewpoints) pts.push_back(inst.curve.at(s));
  }
  rep.coverage = coverage_fraction(inst.polygon, pts, opt.samples, sol.instance.seed ^ 0x5bd1e995ULL);
  if (*rep.coverage < opt.min_coverage) {
    rep.fail("coverage " + std::to_string(*rep.coverage) + " below " + std::to_string(opt.min_coverage));
  }
  if (opt.oracle) {
    StreetOptions wopt;
    wopt.interior_witnesses = 400;
    wopt.seed = sol.instance.seed;
    const std::vector<Point> witnesses = street_witness_points(inst.polygon, wopt);
    const auto res = oracle::brute_street(inst.polygon.vertices(), inst.curve.waypoints(), witnesses,
                                          inst.m, inst.t_m, opt.oracle_grid);
    if (res.feasible) {
      rep.oracle = res.makespan;
      rep.oracle_slack = res.gap;
    }
  }
}

void verify_gtsp(const SolutionDocument& sol, const VerifyOptions& opt, VerifyReport& rep) {
  const InstanceDocument& doc = sol.instance;
  const SimplePolygon poly = polygon_of(doc);
  const std::vector<Point>& vps = *doc.viewpoints;
  const std::vector<Point>& targets = *doc.targets;
  const DepotScenario& sc = *doc.depots;
  const std::size_t m = doc.m;
  const ShortestPathMap paths(poly);

  if (sol.routes.size() != m) {
    rep.fail("plan has " + std::to_string(sol.routes.size()) + " routes, expected m=" + std::to_string(m));
  }
  std::multiset<std::size_t> finishes;
  std::vector<char> seen(targets.size(), 0);
  double total = 0.0;
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    const RobotRoute& rt = sol.routes[r];
    const std::string who = "route " + std::to_string(r);
    if (rt.start_depot >= sc.depots.size() || rt.finish_depot >= sc.depots.size()) {
      rep.fail(who + ": depot index out of range");
      continue;
    }
    std::size_t want_start = 0;
    switch (sc.kind) {
      case DepotKind::kSameDepot:
        want_start = 0;
        if (rt.finish_depot != 0) rep.fail(who + ": must finish at depot 0");
        break;
      case DepotKind::kSameFinish:
        want_start = r;
        if (rt.finish_depot != m && !rt.idle()) rep.fail(who + ": must finish at depot " + std::to_string(m));
        break;
      case DepotKind::kInterchangeable:
        want_start = r;
        finishes.insert(rt.finish_depot);
        break;
    }
    if (rt.start_depot != want_start) rep.fail(who + ": wrong start depot");

    std::vector<Point> stops{sc.depots[rt.start_depot]};
    for (std::size_t v : rt.viewpoints) {
      if (v >= vps.size()) {
        rep.fail(who + ": viewpoint index out of range");
        continue;
      }
      stops.push_back(vps[v]);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!seen[t] && sees(poly, vps[v], targets[t])) seen[t] = 1;
      }
    }
    // An idle robot under same-finish stays where it started.
    const bool parked = sc.kind == DepotKind::kSameFinish && rt.idle();
    stops.push_back(parked ? sc.depots[rt.start_depot] : sc.depots[rt.finish_depot]);
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < stops.size(); ++k) len += paths.distance(stops[k], stops[k + 1]);
    if (std::abs(len - rt.length) > opt.cost_tol * std::max(1.0, len)) {
      rep.fail(who + ": length " + std::to_string(rt.length) + " recomputes to " + std::to_string(len));
    }
    total += len;
  }
  if (sc.kind == DepotKind::kInterchangeable) {
    for (std::size_t d = 0; d < m; ++d) {
      if (finishes.count(d) != 1) rep.fail("depot " + std::to_string(d) + " does not receive exactly one robot");
    }
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (!seen[t]) {
      rep.uncovered.push_back(t);
      rep.fail("target " + std::to_string(t) + " is not seen by any visited viewpoint");
    }
  }
  rep.recomputed = total;
  if (opt.oracle) {
    rep.oracle = oracle::brute_gtsp(build_gtsp(poly, vps, targets, sc, m));
  }
}

}  // namespace

std::string VerifyReport::summary() const {
  std::ostringstream out;
  out.precision(12);
  for (const std::string& f : failures) out << "FAIL " << f << "\n";
  if (pass) {
    out << "PASS objective " << reported << " (recomputed " << recomputed << ")";
    if (coverage) out << ", coverage " << *coverage;
    out << "\n";
  }
  if (oracle) {
    out << "ORACLE optimum " << *oracle << ", gap " << *oracle_gap;
    if (oracle_slack) out << ", discretization slack " << *oracle_slack;
    out << "\n";
  }
  return out.str();
}

VerifyReport verify_solution(const SolutionDocument& solution, const VerifyOptions& options) {
  VerifyReport rep;
  rep.reported = solution.objective;
  if (solution.instance.kind() != solution.kind) {
    rep.fail("solution kind does not match its instance");
    return rep;
  }
  switch (solution.kind) {
    case ProblemKind::kChain: verify_chain(solution, options, rep); break;
    case ProblemKind::kStreet: verify_street(solution, options, rep); break;
    case ProblemKind::kGtsp: verify_gtsp(solution, options, rep); break;
  }
  if (std::abs(rep.recomputed - rep.reported) > options.cost_tol * std::max(1.0, rep.recomputed)) {
    rep.fail("objective " + std::to_string(rep.reported) + " recomputes to " +
             std::to_string(rep.recomputed));
  }
  if (rep.oracle) rep.oracle_gap = rep.reported - *rep.oracle;
  return rep;
}

}  // namespace watchroute
