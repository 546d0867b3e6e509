// Command-line front end: solvers, instance generation, batch sweeps,
// verification, plotting and TSPLIB interop.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "watchroute/batch.hpp"
#include "watchroute/errors.hpp"
#include "watchroute/generators.hpp"
#include "watchroute/io.hpp"
#include "watchroute/svg.hpp"
#include "watchroute/tsp_solver.hpp"
#include "watchroute/verify.hpp"

using namespace watchroute;

namespace {

enum Exit { kOk = 0, kSchema = 1, kInfeasible = 2, kTimeout = 3, kVerifyFail = 4 };

struct Common {
  std::string instance;
  std::string out;
  std::string svg;
  std::optional<std::size_t> m;
  std::optional<double> t_m;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* app, Common& c, bool with_tm) {
  app->add_option("instance", c.instance, "Instance JSON file")->required();
  app->add_option("--m", c.m, "Override the robot count");
  if (with_tm) app->add_option("--tm", c.t_m, "Override the measurement time");
  app->add_option("--seed", c.seed, "Override the instance seed");
  app->add_option("--out", c.out, "Write the solution here instead of stdout");
  app->add_option("--svg", c.svg, "Also render the solution as SVG");
}

InstanceDocument load(const Common& c) {
  InstanceDocument doc = parse_instance(read_file(c.instance));
  if (c.m) doc.m = *c.m;
  if (c.t_m) doc.t_m = *c.t_m;
  if (c.seed) doc.seed = *c.seed;
  return doc;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

void finish(const Common& c, const SolutionDocument& sol) {
  emit(c.out, serialize(sol));
  if (!c.svg.empty()) write_file(c.svg, render_svg(sol.instance, &sol));
  if (!c.out.empty()) {
    std::printf("%s %.12g\n", sol.kind == ProblemKind::kGtsp ? "total_cost" : "makespan", sol.objective);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot visibility route planning"};
  app.require_subcommand(1);

  Common chain;
  auto* solve_chain_cmd = app.add_subcommand("solve-chain", "Exact min-makespan plan on a chain-visible curve");
  add_common(solve_chain_cmd, chain, true);

  Common street;
  double rel_tol = 0.05;
  std::size_t street_samples = 100000;
  auto* solve_street_cmd = app.add_subcommand("solve-street", "Approximate plan covering a street polygon");
  add_common(solve_street_cmd, street, true);
  solve_street_cmd->add_option("--rel-tol", rel_tol, "Binary search tolerance")->check(CLI::Range(1e-6, 0.5));
  solve_street_cmd->add_option("--samples", street_samples, "Coverage samples for the final check");

  Common gtsp;
  std::string scenario;
  std::string solver = "auto";
  double time_budget = 60.0;
  bool symmetrize = false;
  auto* solve_gtsp_cmd = app.add_subcommand("solve-gtsp", "Exact min-sum routes through discrete viewpoints");
  add_common(solve_gtsp_cmd, gtsp, false);
  solve_gtsp_cmd->add_option("--scenario", scenario, "same-depot | same-finish | interchangeable");
  solve_gtsp_cmd->add_option("--solver", solver, "auto | held-karp | bnb");
  solve_gtsp_cmd->add_option("--time-budget", time_budget, "Branch and bound budget in seconds");
  solve_gtsp_cmd->add_flag("--symmetrize", symmetrize, "Solve the symmetric two-copy form");

  GenOptions gen;
  std::string gen_env = "square", gen_kind = "chain", gen_scenario = "same-depot", gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--env", gen_env, "square | lshape | u2 | random-street | random-simple");
  gen_cmd->add_option("--kind", gen_kind, "chain | street | gtsp");
  gen_cmd->add_option("--targets", gen.targets);
  gen_cmd->add_option("--viewpoints", gen.viewpoints);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--tm", gen.t_m);
  gen_cmd->add_option("--scenario", gen_scenario);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen_out);

  BatchOptions batch;
  std::string batch_env = "random-street", batch_kind = "chain", batch_scenario = "same-depot";
  std::string batch_sweep = "robots", batch_range = "1..5", batch_out;
  bool batch_serial = false;
  batch.base.targets = 15;
  batch.base.t_m = 1.0;
  auto* batch_cmd = app.add_subcommand("batch", "Run a seeded sweep and print CSV statistics");
  batch_cmd->add_option("--env", batch_env);
  batch_cmd->add_option("--kind", batch_kind);
  batch_cmd->add_option("--trials", batch.trials);
  batch_cmd->add_option("--sweep", batch_sweep, "robots | targets");
  batch_cmd->add_option("--range", batch_range, "a..b");
  batch_cmd->add_option("--targets", batch.base.targets);
  batch_cmd->add_option("--viewpoints", batch.base.viewpoints);
  batch_cmd->add_option("--m", batch.base.m);
  batch_cmd->add_option("--tm", batch.base.t_m);
  batch_cmd->add_option("--scenario", batch_scenario);
  batch_cmd->add_option("--rel-tol", batch.rel_tol);
  batch_cmd->add_option("--seed", batch.base.seed);
  batch_cmd->add_flag("--serial", batch_serial, "Run trials on one thread");
  batch_cmd->add_option("--out", batch_out);

  std::string verify_instance, verify_solution_path;
  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Recheck coverage and cost of a solution");
  verify_cmd->add_option("--solution", verify_solution_path)->required();
  verify_cmd->add_option("--instance", verify_instance, "Check against this instance instead of the embedded one");
  verify_cmd->add_option("--samples", vopt.samples);
  verify_cmd->add_flag("--oracle", vopt.oracle, "Also run the brute-force oracle");

  std::string plot_solution, plot_instance, plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "Render an instance or solution as SVG");
  plot_cmd->add_option("--solution", plot_solution);
  plot_cmd->add_option("--instance", plot_instance);
  plot_cmd->add_option("--out", plot_out);

  std::string export_instance, export_out;
  std::int64_t scale = 1000;
  bool export_sym = false;
  auto* export_cmd = app.add_subcommand("export-tsplib", "Write the transformed TSP instance in TSPLIB format");
  export_cmd->add_option("--instance", export_instance)->required();
  export_cmd->add_option("--scale", scale)->check(CLI::PositiveNumber);
  export_cmd->add_flag("--symmetrize", export_sym);
  export_cmd->add_option("--out", export_out);

  std::string decode_instance, decode_tour_path, decode_out;
  bool decode_sym = false;
  auto* decode_cmd = app.add_subcommand("decode-tour", "Turn an external TSP tour file into a solution");
  decode_cmd->add_option("--instance", decode_instance)->required();
  decode_cmd->add_option("--tour", decode_tour_path)->required();
  decode_cmd->add_flag("--symmetrize", decode_sym, "The tour is for the symmetric instance");
  decode_cmd->add_option("--out", decode_out);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*solve_chain_cmd) {
      const InstanceDocument doc = load(chain);
      const RoutePlan plan = solve_chain(chain_instance_of(doc));
      finish(chain, chain_solution(doc, plan, seconds_since(t0)));
    } else if (*solve_street_cmd) {
      const InstanceDocument doc = load(street);
      StreetOptions opt;
      opt.rel_tol = rel_tol;
      opt.seed = doc.seed;
      opt.verify_samples = street_samples;
      const StreetSolution sol = solve_street(street_instance_of(doc), opt);
      finish(street, street_solution(doc, sol, rel_tol, seconds_since(t0)));
    } else if (*solve_gtsp_cmd) {
      InstanceDocument doc = load(gtsp);
      if (doc.kind() != ProblemKind::kGtsp) throw SchemaError("kind", "expected a gtsp instance");
      if (!scenario.empty()) doc.depots->kind = depot_kind_from_string(scenario);
      GtspSolveOptions opt;
      opt.solver = tsp_solver_from_string(solver);
      opt.time_budget_s = time_budget;
      opt.symmetrize = symmetrize;
      const GtspSolution sol =
          solve_gtsp(polygon_of(doc), *doc.viewpoints, *doc.targets, *doc.depots, doc.m, opt);
      finish(gtsp, gtsp_solution(doc, sol, seconds_since(t0)));
    } else if (*gen_cmd) {
      gen.env = environment_from_string(gen_env);
      gen.kind = problem_kind_from_string(gen_kind);
      gen.scenario = depot_kind_from_string(gen_scenario);
      emit(gen_out, serialize(generate(gen)));
    } else if (*batch_cmd) {
      batch.base.env = environment_from_string(batch_env);
      batch.base.kind = problem_kind_from_string(batch_kind);
      batch.base.scenario = depot_kind_from_string(batch_scenario);
      batch.sweep = sweep_from_string(batch_sweep);
      std::tie(batch.from, batch.to) = parse_range(batch_range);
      batch.parallel = !batch_serial;
      emit(batch_out, batch_csv(batch, run_batch(batch)));
    } else if (*verify_cmd) {
      SolutionDocument sol = parse_solution(read_file(verify_solution_path));
      if (!verify_instance.empty()) sol.instance = parse_instance(read_file(verify_instance));
      const VerifyReport rep = verify_solution(sol, vopt);
      std::cout << rep.summary();
      return rep.pass ? kOk : kVerifyFail;
    } else if (*plot_cmd) {
      if (!plot_solution.empty()) {
        const SolutionDocument sol = parse_solution(read_file(plot_solution));
        emit(plot_out, render_svg(sol.instance, &sol));
      } else if (!plot_instance.empty()) {
        emit(plot_out, render_svg(parse_instance(read_file(plot_instance))));
      } else {
        throw SchemaError("plot", "needs --solution or --instance");
      }
    } else if (*export_cmd) {
      const InstanceDocument doc = parse_instance(read_file(export_instance));
      if (doc.kind() != ProblemKind::kGtsp) throw SchemaError("kind", "expected a gtsp instance");
      const GtspInstance g = build_gtsp(polygon_of(doc), *doc.viewpoints, *doc.targets, *doc.depots, doc.m);
      AtspInstance inst = noon_bean_transform(g).atsp();
      if (export_sym) inst = karp_symmetrize(inst).instance;
      emit(export_out, export_tsplib(inst, scale));
    } else if (*decode_cmd) {
      const InstanceDocument doc = parse_instance(read_file(decode_instance));
      if (doc.kind() != ProblemKind::kGtsp) throw SchemaError("kind", "expected a gtsp instance");
      const SimplePolygon poly = polygon_of(doc);
      GtspSolution sol;
      sol.instance = build_gtsp(poly, *doc.viewpoints, *doc.targets, *doc.depots, doc.m);
      sol.graph = noon_bean_transform(sol.instance);
      sol.tour = import_tsplib_tour(read_file(decode_tour_path));
      if (decode_sym) sol.tour = desymmetrize_tour(sol.graph.nodes.size(), sol.tour);
      sol.plan = decode_tour(sol.instance, sol.graph, sol.tour, poly);
      sol.solver = "external";
      Common c;
      c.out = decode_out;
      finish(c, gtsp_solution(doc, sol, seconds_since(t0)));
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const TimeoutError& e) {
    std::cerr << "timeout: " << e.what() << " (lower bound " << e.lower_bound() << ", incumbent "
              << e.incumbent() << ")\n";
    return kTimeout;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  }
  return kOk;
}
