#pragma once

#include <string>

#include "watchroute/io.hpp"

namespace watchroute {

/// Polygon, curve, targets (stars), candidate viewpoints, depots and, when a
/// solution is given, one colored path per robot with its viewpoints drawn
/// as squares. Output bytes depend only on the inputs.
std::string render_svg(const InstanceDocument& instance, const SolutionDocument* solution = nullptr);

}  // namespace watchroute
