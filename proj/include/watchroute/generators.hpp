#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "watchroute/geometry.hpp"
#include "watchroute/gtsp_reduction.hpp"
#include "watchroute/io.hpp"

namespace watchroute {

enum class Environment { kSquare, kLShape, kU2, kRandomStreet, kRandomSimple };

std::string to_string(Environment e);
Environment environment_from_string(const std::string& s);

struct GenOptions {
  Environment env = Environment::kSquare;
  ProblemKind kind = ProblemKind::kChain;
  std::size_t targets = 5;
  std::size_t viewpoints = 8;
  std::size_t m = 1;
  double t_m = 0.0;
  DepotKind scenario = DepotKind::kSameDepot;
  std::uint64_t seed = 1;
};

struct Scene {
  std::vector<Point> polygon;
  std::vector<Point> curve;
  /// Rectangular pockets of a comb polygon, empty for other shapes.
  std::vector<SimplePolygon::Box> pockets;
};

/// Polygon and curve of an environment. Random environments draw their
/// shape from `seed`.
Scene make_scene(Environment env, std::uint64_t seed);

/// Deterministic instance for `options.seed`. Targets come from one seeded
/// stream, so asking for fewer targets yields a prefix of a larger draw.
/// Chain targets see the curve in one nonempty interval; gtsp targets are
/// seen by at least one viewpoint.
InstanceDocument generate(const GenOptions& options);

/// splitmix64 step; used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace watchroute
