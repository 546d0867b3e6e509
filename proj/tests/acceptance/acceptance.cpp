// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "watchroute/batch.hpp"
#include "watchroute/chain_dp.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/generators.hpp"
#include "watchroute/gtsp_reduction.hpp"
#include "watchroute/io.hpp"
#include "watchroute/oracles.hpp"
#include "watchroute/street_approx.hpp"
#include "watchroute/tsp_solver.hpp"

using namespace watchroute;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

template <class F>
void criterion(int id, const char* name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.pass) ++failures;
  std::printf("%s %d %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

double perm_brute(const AtspInstance& inst) {
  std::vector<std::size_t> perm(inst.n());
  std::iota(perm.begin(), perm.end(), 0);
  double best = kForbidden;
  do {
    best = std::min(best, tour_cost(inst, perm));
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

AtspInstance random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 100.0);
  AtspInstance inst;
  inst.cost.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) inst.cost[i][j] = std::round(w(rng) * 1000) / 1000;
    }
  }
  return inst;
}

bool non_increasing(const std::vector<BatchRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].mean > rows[i - 1].mean + 1e-9) return false;
  }
  return true;
}

bool non_decreasing(const std::vector<BatchRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].mean < rows[i - 1].mean - 1e-9) return false;
  }
  return true;
}

std::string means(const std::vector<BatchRow>& rows) {
  std::string s;
  for (const BatchRow& r : rows) s += (s.empty() ? "" : " ") + num(std::round(r.mean * 1000) / 1000);
  return s;
}

struct StreetCase {
  StreetInstance instance;
  StreetSolution solution;
  oracle::StreetOracleResult opt;
};

std::vector<StreetCase> street_cases() {
  std::vector<StreetCase> cases;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Scene scene = i % 10 == 9 ? make_scene(Environment::kU2, i)
                                    : make_scene(Environment::kRandomStreet, mix_seed(2024, i));
    SimplePolygon poly(scene.polygon);
    StreetInstance inst{poly, Curve(poly, scene.curve), 1 + i % 3, i % 2 ? 1.0 : 0.5};
    StreetOptions opt;
    opt.seed = mix_seed(7, i);
    StreetSolution sol = solve_street(inst, opt);
    StreetOptions wopt;
    wopt.interior_witnesses = 400;
    wopt.seed = mix_seed(99, i);
    const std::vector<Point> witnesses = street_witness_points(inst.polygon, wopt);
    const auto opt_res = oracle::brute_street(scene.polygon, scene.curve, witnesses, inst.m, inst.t_m, 400);
    cases.push_back({std::move(inst), std::move(sol), opt_res});
  }
  return cases;
}

}  // namespace

int main() {
  criterion(1, "chain DP equals brute_chain on 100 random instances", [](Outcome& o) {
    const Environment envs[] = {Environment::kSquare, Environment::kLShape, Environment::kU2};
    const double tms[] = {0.0, 0.5, 1.0};
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      GenOptions g;
      g.env = envs[i % 3];
      g.targets = 1 + i % 5;
      g.m = 1 + (i / 3) % 3;
      g.t_m = tms[(i / 9) % 3];
      g.seed = mix_seed(1, i);
      const ChainInstance inst = chain_instance_of(generate(g));
      const double got = solve_chain(inst).makespan;
      const double want = oracle::brute_chain(inst);
      worst = std::max(worst, std::abs(got - want));
      if (std::abs(got - want) > 1e-9) o.fail("instance " + std::to_string(i) + ": " + num(got) + " vs " + num(want));
    }
    if (o.pass) o.detail = "max |diff| " + num(worst);
  });

  criterion(2, "U-polygon chain values", [](Outcome& o) {
    const SimplePolygon u(fixtures::u_polygon());
    ChainInstance inst{u, Curve(u, fixtures::u_curve()), fixtures::u_towers(), 2, 1.0};
    const double two = solve_chain(inst).makespan;
    const double two_oracle = oracle::brute_chain(inst);
    inst.m = 1;
    const double one = solve_chain(inst).makespan;
    const double one_oracle = oracle::brute_chain(inst);
    if (std::abs(two - 1.0) > 1e-9 || std::abs(two - two_oracle) > 1e-9) o.fail("m=2 gives " + num(two));
    if (std::abs(one - (8.0 / 18 + 2)) > 1e-9 || std::abs(one - one_oracle) > 1e-9) o.fail("m=1 gives " + num(one));
    if (o.pass) o.detail = "m=2 " + num(two) + ", m=1 " + num(one);
  });

  std::vector<StreetCase> streets;

  criterion(3, "street makespan within 4x the brute-force optimum", [&](Outcome& o) {
    streets = street_cases();
    double worst_ratio = 0.0;
    double min_cov = 1.0;
    for (std::size_t i = 0; i < streets.size(); ++i) {
      const StreetCase& c = streets[i];
      const double bound = 4.0 * (c.opt.makespan + c.opt.gap);
      if (!c.opt.feasible) o.fail("case " + std::to_string(i) + ": oracle infeasible");
      if (c.solution.plan.makespan > bound + 1e-9) {
        o.fail("case " + std::to_string(i) + ": " + num(c.solution.plan.makespan) + " > " + num(bound));
      }
      for (const PathOnCurve& p : c.solution.plan.paths) {
        if (p.cost > 4.0 * c.solution.guess + 1e-9) o.fail("case " + std::to_string(i) + ": path above 4 x guess");
      }
      if (c.solution.coverage < 0.999) o.fail("case " + std::to_string(i) + ": coverage " + num(c.solution.coverage));
      worst_ratio = std::max(worst_ratio, c.solution.plan.makespan / c.opt.makespan);
      min_cov = std::min(min_cov, c.solution.coverage);
    }
    if (o.pass) o.detail = "30 cases, worst makespan/oracle " + num(worst_ratio) + ", min coverage " + num(min_cov);
  });

  criterion(4, "every failed guess is below the optimum", [&](Outcome& o) {
    if (streets.empty()) o.fail("no street cases were solved");
    std::size_t checked = 0;
    for (std::size_t i = 0; i < streets.size(); ++i) {
      for (const SearchStep& s : streets[i].solution.trace) {
        if (s.success) continue;
        ++checked;
        if (!(streets[i].opt.makespan > s.guess)) {
          o.fail("case " + std::to_string(i) + ": guess " + num(s.guess) + " failed but oracle is " +
                 num(streets[i].opt.makespan));
        }
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " failed guesses checked";
  });

  criterion(5, "GTSP pipeline equals brute_gtsp on 50 instances", [](Outcome& o) {
    std::size_t done = 0;
    double worst = 0.0;
    std::size_t scenario_count[3] = {0, 0, 0};
    for (std::uint64_t seed = 1; done < 50; ++seed) {
      GenOptions g;
      g.env = seed % 3 == 0 ? Environment::kU2 : seed % 3 == 1 ? Environment::kRandomStreet : Environment::kRandomSimple;
      g.kind = ProblemKind::kGtsp;
      g.targets = 1 + seed % 5;
      g.viewpoints = 3 + seed % 6;
      g.m = 1 + seed % 2;
      g.scenario = static_cast<DepotKind>(done % 3);
      g.seed = mix_seed(5, seed);
      const InstanceDocument doc = generate(g);
      const SimplePolygon poly(doc.polygon);
      const GtspInstance inst = build_gtsp(poly, *doc.viewpoints, *doc.targets, *doc.depots, doc.m);
      std::size_t copies = 0;
      for (const auto& c : inst.clusters) copies += c.size();
      if (inst.viewpoints.size() > 8 || copies > 12) continue;
      ++scenario_count[done % 3];
      ++done;
      const GtspSolution sol = solve_gtsp(poly, *doc.viewpoints, *doc.targets, *doc.depots, doc.m);
      const double want = oracle::brute_gtsp(inst);
      worst = std::max(worst, std::abs(sol.plan.total_cost - want));
      if (std::abs(sol.plan.total_cost - want) > 1e-6) {
        o.fail("seed " + std::to_string(seed) + ": " + num(sol.plan.total_cost) + " vs " + num(want));
      }
      std::vector<char> hit(inst.clusters.size(), 0);
      for (const RobotRoute& r : sol.plan.routes) {
        for (std::size_t k = 0; k < r.viewpoints.size(); ++k) {
          for (std::size_t c : r.credited[k]) {
            if (std::binary_search(inst.clusters[c].begin(), inst.clusters[c].end(), r.viewpoints[k])) hit[c] = 1;
          }
        }
      }
      if (std::count(hit.begin(), hit.end(), 0) != 0) o.fail("seed " + std::to_string(seed) + ": cluster left uncovered");
    }
    if (o.pass) {
      o.detail = "max |diff| " + num(worst) + " over " + std::to_string(scenario_count[0]) + "/" +
                 std::to_string(scenario_count[1]) + "/" + std::to_string(scenario_count[2]) +
                 " same-depot/same-finish/interchangeable";
    }
  });

  criterion(6, "square depot instance", [](Outcome& o) {
    const SimplePolygon sq(fixtures::unit_square());
    const std::vector<Point> views{{0.2, 0.2}, {0.8, 0.8}};
    const std::vector<Point> targets{{0.5, 0.5}};
    const GtspSolution sol = solve_gtsp(sq, views, targets, {DepotKind::kSameDepot, {{0.1, 0.1}}}, 1);
    const double want = 2 * std::sqrt(0.02);
    if (std::abs(sol.plan.total_cost - want) > 1e-9) o.fail("total_cost " + num(sol.plan.total_cost));
    o.detail = "total_cost " + num(sol.plan.total_cost);
  });

  criterion(7, "batch trends", [](Outcome& o) {
    BatchOptions robots;
    robots.base.env = Environment::kRandomStreet;
    robots.base.targets = 15;
    robots.base.t_m = 1.0;
    robots.base.seed = 2023;
    robots.sweep = SweepKind::kRobots;
    robots.from = 1;
    robots.to = 5;
    robots.trials = 50;
    const auto r1 = run_batch(robots);
    if (!non_increasing(r1)) o.fail("chain makespan vs m: " + means(r1));

    BatchOptions targets = robots;
    targets.base.m = 3;
    targets.sweep = SweepKind::kTargets;
    targets.from = 5;
    targets.to = 25;
    const auto r2 = run_batch(targets);
    if (!non_decreasing(r2)) o.fail("chain makespan vs |X|: " + means(r2));

    BatchOptions gtsp;
    gtsp.base.env = Environment::kRandomStreet;
    gtsp.base.kind = ProblemKind::kGtsp;
    gtsp.base.targets = 10;
    gtsp.base.scenario = DepotKind::kSameDepot;
    gtsp.base.seed = 2023;
    gtsp.sweep = SweepKind::kRobots;
    gtsp.from = 1;
    gtsp.to = 3;
    gtsp.trials = 20;
    const auto r3 = run_batch(gtsp);
    if (!non_increasing(r3)) o.fail("gtsp total_cost vs m: " + means(r3));
    if (o.pass) o.detail = "m: [" + means(r1) + "], |X|: [" + means(r2) + "], gtsp m: [" + means(r3) + "]";
  });

  criterion(8, "geometry against oracles", [](Outcome& o) {
    std::vector<std::vector<Point>> rings{fixtures::l_polygon(), fixtures::u_polygon(),
                                          make_scene(Environment::kRandomStreet, 3).polygon,
                                          make_scene(Environment::kRandomSimple, 4).polygon};
    std::size_t pairs = 0;
    double ray_err = 0.0, path_err = 0.0;
    for (std::size_t k = 0; k < rings.size(); ++k) {
      const SimplePolygon poly(rings[k]);
      const auto pts = sample_interior(poly, 100, 11 + k);
      for (std::size_t a = 0; a < pts.size() && pairs < 10000; ++a) {
        for (std::size_t b = 0; b < pts.size() && pairs < 10000; ++b, ++pairs) {
          if (sees(poly, pts[a], pts[b]) != sees(poly, pts[b], pts[a])) o.fail("sees is not symmetric");
        }
      }
      const ShortestPathMap paths(poly);
      for (std::size_t i = 0; i < 5; ++i) {
        const Point p = pts[i];
        const VisibilityRegion vp = visibility_polygon(poly, p);
        for (const auto& ray : oracle::raycast_vp(rings[k], p, 1000, 100 + i)) {
          const double got = fixtures::ray_extent(vp.boundary, p, ray.direction);
          ray_err = std::max(ray_err, std::abs(got - ray.distance));
        }
        for (std::size_t j = 50; j < 60; ++j) {
          const double got = paths.distance(p, pts[j]);
          const double want = oracle::brute_geodesic(rings[k], p, pts[j]);
          path_err = std::max(path_err, std::abs(got - want));
        }
      }
    }
    if (pairs < 10000) o.fail("only " + std::to_string(pairs) + " pairs");
    if (ray_err > 1e-6) o.fail("visibility polygon vs raycast differs by " + num(ray_err));
    if (path_err > 1e-9) o.fail("shortest path vs Dijkstra differs by " + num(path_err));
    if (o.pass) o.detail = std::to_string(pairs) + " pairs, ray err " + num(ray_err) + ", path err " + num(path_err);
  });

  criterion(9, "TSP solvers", [](Outcome& o) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
      const AtspInstance inst = random_matrix(2 + t % 7, rng);
      const double got = held_karp(inst).cost;
      if (std::abs(got - perm_brute(inst)) > 1e-9) o.fail("held-karp differs from permutations");
    }
    for (std::size_t n = 3; n <= 18; ++n) {
      const AtspInstance inst = random_matrix(n, rng);
      const BnbResult b = branch_and_bound(inst);
      if (!b.optimal || std::abs(b.tour.cost - held_karp(inst).cost) > 1e-9) {
        o.fail("branch and bound differs at n=" + std::to_string(n));
      }
    }
    AtspInstance three;
    three.name = "three";
    three.cost = {{0, 1.5, 2.25}, {1, 0, kForbidden}, {3.0004, 0.0005, 0}};
    std::ifstream in(std::string(WATCHROUTE_GOLDEN_DIR) + "/three_node.tsp", std::ios::binary);
    const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (export_tsplib(three, 1000) != golden) o.fail("TSPLIB export differs from the golden file");
    if (o.pass) o.detail = "100 held-karp, 16 bnb, golden byte-exact";
  });

  std::printf("INFO 10 published solver timings and robot-hardware runs are not reproduced\n");
  return failures == 0 ? 0 : 1;
}
