#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace watchroute {

inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

/// Directed cost matrix. Forbidden arcs hold kForbidden.
struct AtspInstance {
  std::string name = "watchroute";
  std::vector<std::vector<double>> cost;
  /// Largest penalty used to build the instance; sizes the TSPLIB sentinel.
  std::optional<double> penalty_hint;

  std::size_t n() const noexcept { return cost.size(); }
  bool symmetric() const;
};

/// Throws DomainError unless the matrix is square with zero diagonal and
/// no negative or NaN entries.
void validate(const AtspInstance& inst);

struct Tour {
  std::vector<std::size_t> order;
  double cost = 0.0;
};

/// Sum of arc costs including the closing arc.
double tour_cost(const AtspInstance& inst, std::span<const std::size_t> order);

/// Subset dynamic program; exact. Throws CapacityError above `cap` nodes
/// and InfeasibleError when no finite tour exists.
Tour held_karp(const AtspInstance& inst, std::size_t cap = 20);

struct BnbOptions {
  double time_budget_s = 60.0;
};

struct BnbResult {
  Tour tour;  // incumbent; empty order when none was found
  double lower_bound = 0.0;
  bool optimal = false;
  std::size_t nodes = 0;
};

/// Depth-first branch and bound with the assignment relaxation as bound and
/// subtour-arc branching. Stops at the time budget with optimal = false.
BnbResult branch_and_bound(const AtspInstance& inst, const BnbOptions& options = {});

/// Optimal assignment (min-cost perfect matching rows to columns). Returns
/// the column assigned to each row and the total cost. Forbidden entries
/// are never chosen unless unavoidable, in which case the cost is infinite.
struct Assignment {
  std::vector<std::size_t> col_of_row;
  double cost = 0.0;
};
Assignment solve_assignment(const std::vector<std::vector<double>>& cost);

/// Two-copy symmetric form of a directed instance: real node i and ghost
/// node n + i. Directed arc i->j becomes edge {i, n+j} with cost c + big.
struct SymmetricTsp {
  AtspInstance instance;  // 2n nodes, symmetric
  double big = 0.0;
  double offset = 0.0;  // symmetric optimum = directed optimum + offset
};
SymmetricTsp karp_symmetrize(const AtspInstance& inst);
/// Directed node order for a tour of the symmetric instance.
std::vector<std::size_t> desymmetrize_tour(std::size_t n, std::span<const std::size_t> order);

struct TsplibDocument {
  AtspInstance instance;  // scaled integer costs, sentinel mapped back to kForbidden
  std::int64_t scale = 1;
  std::int64_t sentinel = 0;
};

/// TSPLIB EXPLICIT / FULL_MATRIX text with costs scaled and rounded half up.
/// Throws CapacityError when any scaled value leaves the int32 range.
std::string export_tsplib(const AtspInstance& inst, std::int64_t scale = 1000);
TsplibDocument import_tsplib(const std::string& text);

/// Tour file with a TOUR_SECTION (1-based, terminated by -1), as written by
/// external solvers.
std::vector<std::size_t> import_tsplib_tour(const std::string& text);

}  // namespace watchroute
