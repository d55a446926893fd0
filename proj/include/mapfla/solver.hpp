#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mapfla/model.hpp"

namespace mapfla {

enum class SolverMode {
  kLA,     // interfering agents are cleared away and restored around each traversal
  kNaive,  // a traversal with an occupied interfering vertex simply fails
};

struct AgentOrder {
  enum class Kind { kIndex, kGiven, kRandomRestarts };

  Kind kind = Kind::kIndex;
  std::vector<AgentId> permutation;  // kGiven
  std::size_t restarts = 0;          // kRandomRestarts: shuffled attempts after the index order
  std::uint64_t seed = 0;

  static AgentOrder index() { return {}; }
  static AgentOrder given(std::vector<AgentId> perm) {
    return AgentOrder{Kind::kGiven, std::move(perm), 0, 0};
  }
  static AgentOrder random_restarts(std::size_t count, std::uint64_t seed) {
    return AgentOrder{Kind::kRandomRestarts, {}, count, seed};
  }
};

struct SolverConfig {
  SolverMode mode = SolverMode::kLA;
  AgentOrder order;
  std::chrono::milliseconds time_limit{30'000};
  /// Maximum nesting of edge traversals inside clearing procedures.
  int recursion_limit = 8;
  /// Upper bound on target vertices tried per clearing / push search; 0 tries all.
  std::size_t candidate_limit = 0;
};

enum class SolveStatus { kSolved, kFailed, kTimeout };

std::string to_string(SolveStatus status);

struct SolveStats {
  double elapsed_ms = 0.0;
  std::size_t moves = 0;
  std::size_t move_la_calls = 0;
  std::size_t case3_failures = 0;
  std::size_t attempts = 0;  // agent orders tried
};

struct SolveResult {
  SolveStatus status = SolveStatus::kFailed;
  Plan plan;  // non-empty only when solved (and the instance needs moves)
  SolveStats stats;
};

/// Push-and-Rotate style solver whose every single-edge traversal goes
/// through move-la. Throws std::invalid_argument when the instance fails
/// validate_roadmap or the config is malformed. A solved result always
/// carries a plan accepted by validate_plan.
SolveResult solve(const Instance& instance, const SolverConfig& config);

}  // namespace mapfla
