#include "watchroute/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "watchroute/errors.hpp"

namespace watchroute {

using nlohmann::json;

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::kChain: return "chain";
    case ProblemKind::kStreet: return "street";
    case ProblemKind::kGtsp: return "gtsp";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "chain") return ProblemKind::kChain;
  if (s == "street") return ProblemKind::kStreet;
  if (s == "gtsp") return ProblemKind::kGtsp;
  throw SchemaError("kind", "unknown problem kind '" + s + "'");
}

ProblemKind InstanceDocument::kind() const {
  if (viewpoints) {
    if (!targets || !depots) throw SchemaError("viewpoints", "gtsp instances need targets and depots");
    if (curve) throw SchemaError("curve", "gtsp instances take no curve");
    return ProblemKind::kGtsp;
  }
  if (depots) throw SchemaError("depots", "depots need viewpoints");
  if (!curve) throw SchemaError("curve", "chain and street instances need a curve");
  return targets ? ProblemKind::kChain : ProblemKind::kStreet;
}

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

json point_json(Point p) { return json::array({round12(p.x), round12(p.y)}); }

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(point_json(p));
  return out;
}

json numbers_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round12(x));
  return out;
}

const json& field(const json& obj, const std::string& name, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw SchemaError(path.empty() ? name : path + "." + name, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& name) {
  return path.empty() ? name : path + "." + name;
}

double number_of(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::size_t count_of(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Point point_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
  return {number_of(j[0], path + "[0]"), number_of(j[1], path + "[1]")};
}

std::vector<Point> points_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_of(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> numbers_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_of(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) line += text[i] == '\n';
    throw ParseError(e.what(), line);
  }
}

json instance_json(const InstanceDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["kind"] = to_string(doc.kind());
  j["polygon"] = points_json(doc.polygon);
  if (doc.curve) j["curve"] = points_json(*doc.curve);
  if (doc.targets) j["targets"] = points_json(*doc.targets);
  if (doc.viewpoints) j["viewpoints"] = points_json(*doc.viewpoints);
  if (doc.depots) {
    j["depots"] = {{"scenario", to_string(doc.depots->kind)}, {"points", points_json(doc.depots->depots)}};
  }
  j["m"] = doc.m;
  j["t_m"] = round12(doc.t_m);
  j["seed"] = doc.seed;
  return j;
}

InstanceDocument instance_of(const json& j, const std::string& path) {
  InstanceDocument doc;
  const json& version = field(j, "schema_version", path);
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw SchemaError(join(path, "schema_version"), "unsupported version");
  }
  doc.polygon = points_of(field(j, "polygon", path), join(path, "polygon"));
  if (j.contains("curve")) doc.curve = points_of(j["curve"], join(path, "curve"));
  if (j.contains("targets")) doc.targets = points_of(j["targets"], join(path, "targets"));
  if (j.contains("viewpoints")) doc.viewpoints = points_of(j["viewpoints"], join(path, "viewpoints"));
  if (j.contains("depots")) {
    const std::string dp = join(path, "depots");
    const json& d = j["depots"];
    const json& sc = field(d, "scenario", dp);
    if (!sc.is_string()) throw SchemaError(dp + ".scenario", "expected a string");
    DepotScenario s;
    try {
      s.kind = depot_kind_from_string(sc.get<std::string>());
    } catch (const DomainError& e) {
      throw SchemaError(dp + ".scenario", e.what());
    }
    s.depots = points_of(field(d, "points", dp), dp + ".points");
    doc.depots = std::move(s);
  }
  if (j.contains("m")) doc.m = count_of(j["m"], join(path, "m"));
  if (doc.m == 0) throw SchemaError(join(path, "m"), "must be positive");
  if (j.contains("t_m")) doc.t_m = number_of(j["t_m"], join(path, "t_m"));
  if (doc.t_m < 0.0) throw SchemaError(join(path, "t_m"), "must be nonnegative");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw SchemaError(join(path, "seed"), "expected an integer");
    }
    doc.seed = j["seed"].get<std::uint64_t>();
  }
  const ProblemKind k = doc.kind();
  if (j.contains("kind") && j["kind"] != to_string(k)) {
    throw SchemaError(join(path, "kind"), "does not match the fields present (" + to_string(k) + ")");
  }
  return doc;
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  return instance_of(parse_json(text), "");
}

std::string serialize(const InstanceDocument& doc) { return instance_json(doc).dump(2) + "\n"; }

std::string serialize(const SolutionDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["kind"] = to_string(doc.kind);
  j["instance"] = instance_json(doc.instance);
  if (doc.kind == ProblemKind::kGtsp) {
    json routes = json::array();
    for (std::size_t r = 0; r < doc.routes.size(); ++r) {
      const RobotRoute& rt = doc.routes[r];
      json credited = json::array();
      for (const auto& c : rt.credited) credited.push_back(c);
      routes.push_back({{"robot", r},
                        {"start_depot", rt.start_depot},
                        {"finish_depot", rt.finish_depot},
                        {"viewpoints", rt.viewpoints},
                        {"credited", credited},
                        {"polyline", points_json(rt.polyline)},
                        {"length", round12(rt.length)}});
    }
    j["routes"] = routes;
    j["total_cost"] = round12(doc.objective);
  } else {
    json paths = json::array();
    for (std::size_t r = 0; r < doc.paths.size(); ++r) {
      const PathOnCurve& p = doc.paths[r];
      paths.push_back({{"robot", r},
                       {"s_start", round12(p.s_start)},
                       {"s_end", round12(p.s_end)},
                       {"viewpoints", numbers_json(p.viewpoints)},
                       {"cost", round12(p.cost)}});
    }
    j["paths"] = paths;
    j["makespan"] = round12(doc.objective);
  }
  if (doc.kind == ProblemKind::kStreet) {
    j["g_star"] = numbers_json(doc.g_star);
    j["guess"] = round12(doc.guess);
    j["coverage"] = round12(doc.coverage);
    json trace = json::array();
    for (const SearchStep& s : doc.trace) trace.push_back({{"guess", round12(s.guess)}, {"success", s.success}});
    j["trace"] = trace;
  }
  j["solver"] = {{"algorithm", doc.solver.algorithm},
                 {"rel_tol", round12(doc.solver.rel_tol)},
                 {"runtime_s", round12(doc.solver.runtime_s)},
                 {"seed", doc.solver.seed},
                 {"optimal", doc.solver.optimal}};
  return j.dump(2) + "\n";
}

SolutionDocument parse_solution(const std::string& text) {
  const json j = parse_json(text);
  SolutionDocument doc;
  const json& version = field(j, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw SchemaError("schema_version", "unsupported version");
  }
  const json& kind = field(j, "kind", "");
  if (!kind.is_string()) throw SchemaError("kind", "expected a string");
  doc.kind = problem_kind_from_string(kind.get<std::string>());
  doc.instance = instance_of(field(j, "instance", ""), "instance");
  if (doc.instance.kind() != doc.kind) throw SchemaError("kind", "does not match the instance");

  if (doc.kind == ProblemKind::kGtsp) {
    const json& routes = field(j, "routes", "");
    if (!routes.is_array()) throw SchemaError("routes", "expected an array");
    for (std::size_t r = 0; r < routes.size(); ++r) {
      const std::string p = "routes[" + std::to_string(r) + "]";
      const json& rj = routes[r];
      RobotRoute rt;
      rt.start_depot = count_of(field(rj, "start_depot", p), p + ".start_depot");
      rt.finish_depot = count_of(field(rj, "finish_depot", p), p + ".finish_depot");
      const json& vps = field(rj, "viewpoints", p);
      if (!vps.is_array()) throw SchemaError(p + ".viewpoints", "expected an array");
      for (std::size_t k = 0; k < vps.size(); ++k) {
        rt.viewpoints.push_back(count_of(vps[k], p + ".viewpoints[" + std::to_string(k) + "]"));
      }
      if (rj.contains("credited")) {
        const json& cr = rj["credited"];
        if (!cr.is_array()) throw SchemaError(p + ".credited", "expected an array");
        for (const json& c : cr) {
          std::vector<std::size_t> ids;
          if (!c.is_array()) throw SchemaError(p + ".credited", "expected arrays of target ids");
          for (const json& id : c) ids.push_back(count_of(id, p + ".credited"));
          rt.credited.push_back(std::move(ids));
        }
      }
      rt.polyline = points_of(field(rj, "polyline", p), p + ".polyline");
      rt.length = number_of(field(rj, "length", p), p + ".length");
      doc.routes.push_back(std::move(rt));
    }
    doc.objective = number_of(field(j, "total_cost", ""), "total_cost");
  } else {
    const json& paths = field(j, "paths", "");
    if (!paths.is_array()) throw SchemaError("paths", "expected an array");
    for (std::size_t r = 0; r < paths.size(); ++r) {
      const std::string p = "paths[" + std::to_string(r) + "]";
      const json& pj = paths[r];
      PathOnCurve path;
      path.s_start = number_of(field(pj, "s_start", p), p + ".s_start");
      path.s_end = number_of(field(pj, "s_end", p), p + ".s_end");
      path.viewpoints = numbers_of(field(pj, "viewpoints", p), p + ".viewpoints");
      path.cost = number_of(field(pj, "cost", p), p + ".cost");
      doc.paths.push_back(std::move(path));
    }
    doc.objective = number_of(field(j, "makespan", ""), "makespan");
  }
  if (doc.kind == ProblemKind::kStreet) {
    if (j.contains("g_star")) doc.g_star = numbers_of(j["g_star"], "g_star");
    if (j.contains("guess")) doc.guess = number_of(j["guess"], "guess");
    if (j.contains("coverage")) doc.coverage = number_of(j["coverage"], "coverage");
    if (j.contains("trace")) {
      for (const json& s : j["trace"]) {
        doc.trace.push_back({number_of(field(s, "guess", "trace"), "trace.guess"),
                             field(s, "success", "trace").get<bool>()});
      }
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    doc.solver.algorithm = s.value("algorithm", "");
    doc.solver.rel_tol = s.value("rel_tol", 0.0);
    doc.solver.runtime_s = s.value("runtime_s", 0.0);
    doc.solver.seed = s.value("seed", std::uint64_t{0});
    doc.solver.optimal = s.value("optimal", true);
  }
  return doc;
}

SimplePolygon polygon_of(const InstanceDocument& doc) {
  try {
    return SimplePolygon(doc.polygon);
  } catch (const DomainError& e) {
    throw SchemaError("polygon", e.what());
  }
}

ChainInstance chain_instance_of(const InstanceDocument& doc) {
  if (doc.kind() != ProblemKind::kChain) throw SchemaError("kind", "expected a chain instance");
  SimplePolygon poly = polygon_of(doc);
  try {
    Curve curve(poly, *doc.curve);
    return ChainInstance{std::move(poly), std::move(curve), *doc.targets, doc.m, doc.t_m};
  } catch (const DomainError& e) {
    throw SchemaError("curve", e.what());
  }
}

StreetInstance street_instance_of(const InstanceDocument& doc) {
  if (doc.kind() != ProblemKind::kStreet) throw SchemaError("kind", "expected a street instance");
  SimplePolygon poly = polygon_of(doc);
  try {
    Curve curve(poly, *doc.curve);
    return StreetInstance{std::move(poly), std::move(curve), doc.m, doc.t_m};
  } catch (const DomainError& e) {
    throw SchemaError("curve", e.what());
  }
}

SolutionDocument chain_solution(const InstanceDocument& doc, const RoutePlan& plan,
                                double runtime_s) {
  SolutionDocument out;
  out.kind = ProblemKind::kChain;
  out.instance = doc;
  out.paths = plan.paths;
  out.objective = plan.makespan;
  out.solver = {"chain-dp", 0.0, runtime_s, doc.seed, true};
  return out;
}

SolutionDocument street_solution(const InstanceDocument& doc, const StreetSolution& sol,
                                 double rel_tol, double runtime_s) {
  SolutionDocument out;
  out.kind = ProblemKind::kStreet;
  out.instance = doc;
  out.paths = sol.plan.paths;
  out.objective = sol.plan.makespan;
  out.g_star = sol.g_star;
  out.guess = sol.guess;
  out.coverage = sol.coverage;
  out.trace = sol.trace;
  out.solver = {"street-binary-search", rel_tol, runtime_s, doc.seed, false};
  return out;
}

SolutionDocument gtsp_solution(const InstanceDocument& doc, const GtspSolution& sol,
                               double runtime_s) {
  SolutionDocument out;
  out.kind = ProblemKind::kGtsp;
  out.instance = doc;
  for (RobotRoute r : sol.plan.routes) {
    for (std::size_t& v : r.viewpoints) v = sol.instance.original_index[v];
    out.routes.push_back(std::move(r));
  }
  out.objective = sol.plan.total_cost;
  out.solver = {"noon-bean+" + sol.solver, 0.0, runtime_s, doc.seed, true};
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace watchroute
