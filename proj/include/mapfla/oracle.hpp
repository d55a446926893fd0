#pragma once

#include <cstddef>

#include "mapfla/model.hpp"

namespace mapfla {

struct OracleResult {
  enum class Status { kSolved, kUnsolvable, kBudgetExceeded };

  Status status = Status::kUnsolvable;
  Plan plan;                 // move-minimal, present when solved
  std::size_t expanded = 0;  // joint states expanded
};

/// Breadth-first search over joint states under single-mover transitions.
/// Successors are generated agent by agent (ascending id), neighbours in
/// ascending vertex order, so returned plans are canonical. Intended for
/// K <= 4 and |V| <= 12.
OracleResult joint_bfs_solve(const Instance& instance, std::size_t node_budget);

}  // namespace mapfla
