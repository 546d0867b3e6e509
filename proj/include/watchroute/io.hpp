#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "watchroute/chain_dp.hpp"
#include "watchroute/geometry.hpp"
#include "watchroute/gtsp_reduction.hpp"
#include "watchroute/street_approx.hpp"

namespace watchroute {

inline constexpr int kSchemaVersion = 1;

enum class ProblemKind { kChain, kStreet, kGtsp };

std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

/// Problem input. The kind follows from which fields are present:
/// chain = curve + targets, street = curve only, gtsp = viewpoints +
/// targets + depots.
struct InstanceDocument {
  int schema_version = kSchemaVersion;
  std::vector<Point> polygon;
  std::optional<std::vector<Point>> curve;
  std::optional<std::vector<Point>> targets;
  std::optional<std::vector<Point>> viewpoints;
  std::optional<DepotScenario> depots;
  std::size_t m = 1;
  double t_m = 0.0;
  std::uint64_t seed = 0;

  ProblemKind kind() const;
};

struct SolverInfo {
  std::string algorithm;
  double rel_tol = 0.0;
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
  bool optimal = true;
};

struct SolutionDocument {
  int schema_version = kSchemaVersion;
  ProblemKind kind = ProblemKind::kChain;
  InstanceDocument instance;
  std::vector<PathOnCurve> paths;   // chain and street
  std::vector<RobotRoute> routes;   // gtsp; viewpoint ids index instance.viewpoints
  double objective = 0.0;           // makespan, or total_cost for gtsp
  SolverInfo solver;
  // street only
  std::vector<double> g_star;
  double guess = 0.0;
  double coverage = 0.0;
  std::vector<SearchStep> trace;
};

/// Numbers are written with 12 significant digits.
double round12(double v);

/// Throws ParseError (with line) on malformed JSON and SchemaError on a
/// missing or invalid field.
InstanceDocument parse_instance(const std::string& text);
std::string serialize(const InstanceDocument& doc);
SolutionDocument parse_solution(const std::string& text);
std::string serialize(const SolutionDocument& doc);

SimplePolygon polygon_of(const InstanceDocument& doc);
ChainInstance chain_instance_of(const InstanceDocument& doc);
StreetInstance street_instance_of(const InstanceDocument& doc);

SolutionDocument chain_solution(const InstanceDocument& doc, const RoutePlan& plan,
                                double runtime_s);
SolutionDocument street_solution(const InstanceDocument& doc, const StreetSolution& sol,
                                 double rel_tol, double runtime_s);
SolutionDocument gtsp_solution(const InstanceDocument& doc, const GtspSolution& sol,
                               double runtime_s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace watchroute
