#include "mapfla/validator.hpp"

#include <sstream>

namespace mapfla {

std::optional<std::string> transition_error(const State& state, const Move& m,
                                            const Instance& instance) {
  const Roadmap& g = instance.roadmap;
  if (m.agent < 0 || static_cast<std::size_t>(m.agent) >= state.num_agents()) {
    return "unknown agent " + std::to_string(m.agent);
  }
  if (!g.contains(m.from) || !g.contains(m.to)) {
    return "move references a missing vertex";
  }
  if (state.position(m.agent) != m.from) {
    return "agent " + std::to_string(m.agent) + " is at vertex " +
           std::to_string(state.position(m.agent)) + ", not " + std::to_string(m.from);
  }
  if (!g.has_edge(m.from, m.to)) {
    return "no edge between " + std::to_string(m.from) + " and " + std::to_string(m.to);
  }
  if (state.occupied(m.to)) {
    return "vertex " + std::to_string(m.to) + " is occupied by agent " +
           std::to_string(state.occupant(m.to));
  }
  const Point2D& a = g.point(m.from);
  const Point2D& b = g.point(m.to);
  const double limit = 2.0 * instance.radius + kGeomEps;
  for (std::size_t j = 0; j < state.num_agents(); ++j) {
    if (static_cast<AgentId>(j) == m.agent) continue;
    const VertexId at = state.position(static_cast<AgentId>(j));
    const double d = segdist(g.point(at), a, b);
    if (d <= limit) {
      std::ostringstream msg;
      msg << "agent " << j << " at vertex " << at << " is " << d << " from edge (" << m.from
          << ", " << m.to << "), need > " << 2.0 * instance.radius;
      return msg.str();
    }
  }
  return std::nullopt;
}

std::string PlanReport::to_string() const {
  switch (kind) {
    case Kind::kOk:
      return "ok";
    case Kind::kBadInstance:
      return "invalid instance: " + reason;
    case Kind::kIllegalMove:
      return "move " + std::to_string(move_index) + ": " + reason;
    case Kind::kGoalNotReached:
      return "goal not reached: " + reason;
  }
  return reason;
}

PlanReport validate_plan(const Instance& instance, std::span<const Move> plan) {
  PlanReport report;
  const RoadmapReport roadmap_report = validate_roadmap(instance);
  if (!roadmap_report.ok()) {
    report.kind = PlanReport::Kind::kBadInstance;
    report.reason = roadmap_report.violations.front().message;
    return report;
  }

  State state = start_state(instance);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (auto err = transition_error(state, plan[i], instance)) {
      report.kind = PlanReport::Kind::kIllegalMove;
      report.move_index = i;
      report.reason = std::move(*err);
      return report;
    }
    state.relocate(plan[i].agent, plan[i].to);
  }

  for (std::size_t a = 0; a < instance.num_agents(); ++a) {
    const VertexId at = state.position(static_cast<AgentId>(a));
    if (at != instance.goals[a]) {
      report.kind = PlanReport::Kind::kGoalNotReached;
      report.reason = "agent " + std::to_string(a) + " ends at vertex " + std::to_string(at) +
                      " instead of " + std::to_string(instance.goals[a]);
      return report;
    }
  }
  return report;
}

}  // namespace mapfla
