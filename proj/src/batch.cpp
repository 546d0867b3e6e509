#include "watchroute/batch.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>

#include "watchroute/errors.hpp"
#include "watchroute/log.hpp"

namespace watchroute {

namespace {

double solve_objective(const InstanceDocument& doc, double rel_tol) {
  switch (doc.kind()) {
    case ProblemKind::kChain:
      return solve_chain(chain_instance_of(doc)).makespan;
    case ProblemKind::kStreet: {
      StreetOptions opt;
      opt.rel_tol = rel_tol;
      opt.seed = doc.seed;
      opt.verify_samples = 0;
      return solve_street(street_instance_of(doc), opt).plan.makespan;
    }
    case ProblemKind::kGtsp: {
      const SimplePolygon poly = polygon_of(doc);
      return solve_gtsp(poly, *doc.viewpoints, *doc.targets, *doc.depots, doc.m).plan.total_cost;
    }
  }
  return 0.0;
}

struct Cell {
  double objective = 0.0;
  double runtime = 0.0;
};

Cell run_cell(const BatchOptions& options, std::size_t value, std::size_t trial) {
  GenOptions gen = options.base;
  gen.seed = mix_seed(options.base.seed, trial);
  if (options.sweep == SweepKind::kRobots) {
    gen.m = value;
  } else {
    gen.targets = value;
  }
  const InstanceDocument doc = generate(gen);
  const auto t0 = std::chrono::steady_clock::now();
  const double obj = solve_objective(doc, options.rel_tol);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {obj, dt.count()};
}

std::vector<BatchRow> collect(const BatchOptions& options, const std::vector<Cell>& cells) {
  const std::size_t k = options.trials;
  std::vector<BatchRow> rows;
  for (std::size_t v = options.from; v <= options.to; ++v) {
    BatchRow row;
    row.value = v;
    double rt = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      const Cell& c = cells[(v - options.from) * k + t];
      row.objectives.push_back(c.objective);
      rt += c.runtime;
    }
    const double n = static_cast<double>(k);
    row.mean = std::accumulate(row.objectives.begin(), row.objectives.end(), 0.0) / n;
    double ss = 0.0;
    for (double o : row.objectives) ss += (o - row.mean) * (o - row.mean);
    row.stddev = std::sqrt(ss / n);
    row.mean_runtime = rt / n;
    log::info("batch {}={}: mean {:.6f} stddev {:.6f}", to_string(options.sweep), v, row.mean, row.stddev);
    rows.push_back(std::move(row));
  }
  return rows;
}

void check(const BatchOptions& options) {
  if (options.trials == 0) throw DomainError("batch: trials must be positive");
  if (options.from > options.to) throw DomainError("batch: empty sweep range");
  if (options.sweep == SweepKind::kRobots && options.from == 0) {
    throw DomainError("batch: robot counts start at 1");
  }
}

}  // namespace

std::string to_string(SweepKind s) { return s == SweepKind::kRobots ? "robots" : "targets"; }

SweepKind sweep_from_string(const std::string& s) {
  if (s == "robots") return SweepKind::kRobots;
  if (s == "targets") return SweepKind::kTargets;
  throw DomainError("unknown sweep '" + s + "'");
}

std::vector<BatchRow> run_batch(const BatchOptions& options) {
  if (!options.parallel) return run_batch_serial(options);
  check(options);
  const std::size_t values = options.to - options.from + 1;
  const auto total = static_cast<std::ptrdiff_t>(values * options.trials);
  std::vector<Cell> cells(static_cast<std::size_t>(total));
  // Exceptions cannot cross the parallel region; keep the first by index.
  std::vector<std::exception_ptr> errors(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      cells[u] = run_cell(options, options.from + u / options.trials, u % options.trials);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return collect(options, cells);
}

std::vector<BatchRow> run_batch_serial(const BatchOptions& options) {
  check(options);
  std::vector<Cell> cells;
  for (std::size_t v = options.from; v <= options.to; ++v) {
    for (std::size_t t = 0; t < options.trials; ++t) cells.push_back(run_cell(options, v, t));
  }
  return collect(options, cells);
}

std::string batch_csv(const BatchOptions& options, const std::vector<BatchRow>& rows) {
  std::string out = to_string(options.sweep) + ",mean,stddev,mean_runtime\n";
  char buf[128];
  for (const BatchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.6g\n", r.value, r.mean, r.stddev, r.mean_runtime);
    out += buf;
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto bad = [&] { return DomainError("range must look like a..b with a <= b, got '" + text + "'"); };
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    std::size_t v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (used != s.size() || s.empty() || s[0] == '-') throw bad();
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t v = number(text);
    return {v, v};
  }
  const std::size_t a = number(text.substr(0, dots));
  const std::size_t b = number(text.substr(dots + 2));
  if (a > b) throw bad();
  return {a, b};
}

}  // namespace watchroute
