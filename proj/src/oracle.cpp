#include "mapfla/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "mapfla/validator.hpp"

namespace mapfla {

namespace {

struct JointNode {
  std::vector<VertexId> positions;
  std::size_t parent;
  Move via;
};

constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

Plan unwind(const std::vector<JointNode>& nodes, std::size_t at) {
  Plan plan;
  for (; nodes[at].parent != kRoot; at = nodes[at].parent) plan.push_back(nodes[at].via);
  std::reverse(plan.begin(), plan.end());
  return plan;
}

}  // namespace

OracleResult joint_bfs_solve(const Instance& instance, std::size_t node_budget) {
  const RoadmapReport report = validate_roadmap(instance);
  if (!report.ok()) {
    throw std::invalid_argument("oracle: " + report.violations.front().message);
  }

  OracleResult result;
  const Roadmap& g = instance.roadmap;
  const std::vector<VertexId>& goal = instance.goals;

  std::vector<JointNode> nodes;
  std::map<std::vector<VertexId>, std::size_t> visited;
  nodes.push_back(JointNode{instance.starts, kRoot, Move{}});
  visited.emplace(instance.starts, 0);
  if (instance.starts == goal) {
    result.status = OracleResult::Status::kSolved;
    return result;
  }

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (result.expanded >= node_budget) {
      result.status = OracleResult::Status::kBudgetExceeded;
      return result;
    }
    ++result.expanded;
    const State state(nodes[head].positions, g.num_vertices());
    for (std::size_t a = 0; a < instance.num_agents(); ++a) {
      const auto agent = static_cast<AgentId>(a);
      const VertexId from = state.position(agent);
      for (const Arc& arc : g.arcs(from)) {
        const Move m{agent, from, arc.to};
        if (!is_valid_transition(state, m, instance)) continue;
        std::vector<VertexId> next = nodes[head].positions;
        next[a] = arc.to;
        if (!visited.emplace(next, nodes.size()).second) continue;
        const bool done = next == goal;
        nodes.push_back(JointNode{std::move(next), head, m});
        if (done) {
          result.status = OracleResult::Status::kSolved;
          result.plan = unwind(nodes, nodes.size() - 1);
          return result;
        }
      }
    }
  }
  result.status = OracleResult::Status::kUnsolvable;
  return result;
}

}  // namespace mapfla
