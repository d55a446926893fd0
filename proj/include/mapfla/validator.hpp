#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "mapfla/model.hpp"

namespace mapfla {

/// Why `m` cannot be executed from `state`, or nullopt when it can. Clearance
/// against resting agents is recomputed from coordinates on every call.
std::optional<std::string> transition_error(const State& state, const Move& m,
                                             const Instance& instance);

inline bool is_valid_transition(const State& state, const Move& m, const Instance& instance) {
  return !transition_error(state, m, instance).has_value();
}

struct PlanReport {
  enum class Kind { kOk, kBadInstance, kIllegalMove, kGoalNotReached };

  Kind kind = Kind::kOk;
  /// Index of the offending move (kIllegalMove only).
  std::size_t move_index = 0;
  std::string reason;

  bool ok() const { return kind == Kind::kOk; }
  std::string to_string() const;
};

/// Replays `plan` from the start state and reports the first violation.
PlanReport validate_plan(const Instance& instance, std::span<const Move> plan);

}  // namespace mapfla
