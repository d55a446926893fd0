#include "mapfla/solver.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mapfla/log.hpp"

#include "mapfla/edge_clearing.hpp"
#include "mapfla/search.hpp"
#include "mapfla/validator.hpp"

namespace mapfla {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved:
      return "solved";
    case SolveStatus::kFailed:
      return "failed";
    case SolveStatus::kTimeout:
      return "timeout";
  }
  return "unknown";
}

namespace {

std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

/// Outer pebble-motion loop: agents are routed one at a time along shortest
/// paths; blockers are pushed aside, swapped with at a branching vertex, or
/// rotated around a cycle. Agents already at their goals are kept in place
/// (their vertices are blocked) unless a later agent has no other way through,
/// in which case the two are swapped and the displaced one is routed again.
class PushAndRotate {
 public:
  PushAndRotate(MoveEngine& engine, std::size_t hub_limit)
      : engine_(engine),
        instance_(engine.instance()),
        full_(instance_.roadmap),
        finished_(engine.empty_set()),
        done_(instance_.num_agents(), 0),
        hub_limit_(hub_limit) {}

  bool run(std::span<const AgentId> order) {
    std::deque<AgentId> queue(order.begin(), order.end());
    std::size_t requeues = 0;
    while (!queue.empty()) {
      const AgentId a = queue.front();
      queue.pop_front();
      if (done_[idx(a)]) continue;
      if (!route(a, queue, requeues)) {
        SPDLOG_LOGGER_DEBUG(&logger(), "agent {} could not be routed", a);
        return false;
      }
      done_[idx(a)] = 1;
      finished_.insert(goal(a));
    }
    for (std::size_t a = 0; a < instance_.num_agents(); ++a) {
      if (pos(static_cast<AgentId>(a)) != instance_.goals[a]) return false;
    }
    return true;
  }

 private:
  VertexId pos(AgentId a) const { return engine_.state().position(a); }
  VertexId goal(AgentId a) const { return instance_.goals[idx(a)]; }
  AgentId occupant(VertexId v) const { return engine_.state().occupant(v); }

  bool step(VertexId from, VertexId to, const VertexSet& blocked) {
    return engine_.move_la(full_, from, to, blocked, 1);
  }

  bool route(AgentId a, std::deque<AgentId>& queue, std::size_t& requeues) {
    const Roadmap& g = instance_.roadmap;
    GraphView routing = full_;
    const std::size_t step_limit = 4 * g.num_vertices() + 16;
    const std::size_t requeue_limit = 2 * instance_.num_agents() + 4;

    for (std::size_t steps = 0; steps < step_limit; ++steps) {
      engine_.check_deadline();
      const VertexId u = pos(a);
      if (u == goal(a)) return true;

      auto path = shortest_path(routing, finished_, u, goal(a));
      if (!path) path = shortest_path(routing, engine_.empty_set(), u, goal(a));
      if (!path) return false;
      const VertexId v = (*path)[1];

      if (const AgentId b = occupant(v); b != kNoAgent) {
        if (done_[idx(b)]) {
          if (requeues >= requeue_limit || !swap(a, b)) return false;
          done_[idx(b)] = 0;
          finished_.erase(goal(b));
          queue.push_back(b);
          ++requeues;
          continue;
        }
        if (!engine_.push_away(full_, v, finished_.with(u), 1)) {
          if (swap(a, b) || rotate(a, v)) continue;
          return false;
        }
      }
      if (!step(u, v, finished_)) {
        routing.remove(g.find_edge(u, v));
      }
    }
    return false;
  }

  /// Exchanges the positions of adjacent agents a and b; every other agent
  /// ends where it started.
  bool swap(AgentId a, AgentId b) {
    VertexSet blocked = finished_;
    blocked.erase(pos(a));
    blocked.erase(pos(b));
    const Roadmap& g = instance_.roadmap;
    const std::vector<int> dist = bfs_distances(full_, pos(a), blocked);
    std::vector<VertexId> pool;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      const auto vid = static_cast<VertexId>(v);
      if (g.degree(vid) >= 3 && !blocked.contains(vid)) pool.push_back(vid);
    }
    std::vector<VertexId> hubs = order_by_distance(pool, dist);
    if (hub_limit_ != 0 && hubs.size() > hub_limit_) hubs.resize(hub_limit_);

    for (VertexId hub : hubs) {
      for (const auto& [leader, follower] : {std::pair{a, b}, std::pair{b, a}}) {
        const std::size_t m = engine_.mark();
        if (swap_at(leader, follower, hub, blocked)) return true;
        engine_.rollback(m);
      }
    }
    return false;
  }

  bool swap_at(AgentId leader, AgentId follower, VertexId hub, const VertexSet& blocked) {
    const std::size_t entry = engine_.mark();
    const Roadmap& g = instance_.roadmap;

    // Bring the pair to the hub, leader first.
    if (pos(leader) != hub) {
      const auto path = shortest_path(full_, blocked.with(pos(follower)), pos(leader), hub);
      if (!path) return false;
      for (std::size_t i = 1; i < path->size(); ++i) {
        const VertexId next = (*path)[i];
        if (engine_.state().occupied(next)) {
          VertexSet keep = blocked.with(pos(leader));
          keep.insert(pos(follower));
          if (!engine_.push_away(full_, next, keep, 1)) return false;
        }
        const VertexId prev = pos(leader);
        if (!step(prev, next, blocked) || !step(pos(follower), prev, blocked)) return false;
      }
    }
    const VertexId tail = pos(follower);

    // Two free neighbours of the hub besides the follower's vertex.
    std::vector<VertexId> spare;
    for (const Arc& arc : g.arcs(hub)) {
      if (spare.size() == 2) break;
      if (arc.to == tail || blocked.contains(arc.to)) continue;
      if (!engine_.state().occupied(arc.to)) {
        spare.push_back(arc.to);
        continue;
      }
      VertexSet keep = blocked.with(hub);
      keep.insert(tail);
      for (VertexId s : spare) keep.insert(s);
      if (engine_.push_away(full_, arc.to, keep, 1)) spare.push_back(arc.to);
    }
    if (spare.size() < 2) return false;

    const Plan setup(engine_.since(entry).begin(), engine_.since(entry).end());
    const VertexId n1 = spare[0];
    const VertexId n2 = spare[1];
    if (!step(hub, n1, blocked) || !step(tail, hub, blocked) || !step(hub, n2, blocked) ||
        !step(n1, hub, blocked) || !step(hub, tail, blocked) || !step(n2, hub, blocked)) {
      return false;
    }

    // Occupancy now matches the end of `setup` with leader and follower
    // exchanged, so undoing `setup` under exchanged names is legal step by
    // step and leaves the pair swapped.
    Plan back = reverse(setup);
    for (Move& m : back) {
      if (m.agent == leader) {
        m.agent = follower;
      } else if (m.agent == follower) {
        m.agent = leader;
      }
    }
    return engine_.replay(back);
  }

  /// Moves `a` onto its occupied neighbour `next` by shifting the agents of a
  /// cycle through edge (pos(a), next) one step forward.
  bool rotate(AgentId a, VertexId next) {
    const Roadmap& g = instance_.roadmap;
    const VertexId u = pos(a);
    const EdgeId e = g.find_edge(u, next);
    const GraphView view = full_.without(std::span<const EdgeId>(&e, 1));
    const auto cycle = shortest_path(view, finished_, next, u);
    if (!cycle || cycle->size() < 3) return false;

    const std::size_t entry = engine_.mark();
    const std::size_t last = cycle->size() - 1;  // index of u
    std::size_t hole = last;
    for (std::size_t i = 1; i < last; ++i) {
      if (!engine_.state().occupied((*cycle)[i])) {
        hole = i;
        break;
      }
    }
    if (hole == last) {
      VertexSet ring = finished_;
      for (VertexId v : *cycle) ring.insert(v);
      for (std::size_t i = 1; i < last && hole == last; ++i) {
        VertexSet keep = ring;
        keep.erase((*cycle)[i]);
        if (engine_.push_away(full_, (*cycle)[i], keep, 1)) hole = i;
      }
      if (hole == last) return false;
    }
    for (std::size_t i = hole; i-- > 0;) {
      if (!step((*cycle)[i], (*cycle)[i + 1], finished_)) {
        engine_.rollback(entry);
        return false;
      }
    }
    if (!step(u, next, finished_)) {
      engine_.rollback(entry);
      return false;
    }
    return true;
  }

  MoveEngine& engine_;
  const Instance& instance_;
  GraphView full_;
  VertexSet finished_;      // vertices of agents parked on their goals
  std::vector<char> done_;  // per agent
  std::size_t hub_limit_;
};

std::vector<std::vector<AgentId>> agent_orders(const AgentOrder& order, std::size_t k) {
  std::vector<AgentId> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  switch (order.kind) {
    case AgentOrder::Kind::kIndex:
      return {identity};
    case AgentOrder::Kind::kGiven: {
      std::vector<AgentId> sorted = order.permutation;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != identity) {
        throw std::invalid_argument("agent order is not a permutation of 0.." +
                                    std::to_string(k) + "-1");
      }
      return {order.permutation};
    }
    case AgentOrder::Kind::kRandomRestarts: {
      std::vector<std::vector<AgentId>> out{identity};
      std::mt19937_64 rng(order.seed);
      for (std::size_t i = 0; i < order.restarts; ++i) {
        std::vector<AgentId> perm = identity;
        std::shuffle(perm.begin(), perm.end(), rng);
        out.push_back(std::move(perm));
      }
      return out;
    }
  }
  return {identity};
}

}  // namespace

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  if (config.recursion_limit < 1) throw std::invalid_argument("recursion limit must be >= 1");
  if (config.time_limit.count() <= 0) throw std::invalid_argument("time limit must be positive");
  if (const RoadmapReport report = validate_roadmap(instance); !report.ok()) {
    throw std::invalid_argument("invalid instance: " + report.violations.front().message);
  }

  const auto started = Clock::now();
  const auto deadline = started + config.time_limit;
  SolveResult result;
  const auto orders = agent_orders(config.order, instance.num_agents());

  const InterferenceCache cache = build_interference(instance.roadmap, instance.radius);
  MoveEngine engine(instance, cache, config, deadline);
  try {
    for (const auto& order : orders) {
      ++result.stats.attempts;
      engine.reset(start_state(instance));
      PushAndRotate outer(engine, config.candidate_limit);
      if (outer.run(order)) {
        result.status = SolveStatus::kSolved;
        result.plan = engine.plan();
        break;
      }
    }
  } catch (const SolverTimeout&) {
    result.status = SolveStatus::kTimeout;
  }

  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - started).count();
  result.stats.moves = result.plan.size();
  result.stats.move_la_calls = engine.move_la_calls();
  result.stats.case3_failures = engine.case3_failures();

  if (result.status == SolveStatus::kSolved) {
    if (const PlanReport check = validate_plan(instance, result.plan); !check.ok()) {
      throw std::logic_error("solver emitted a plan the validator rejects: " + check.to_string());
    }
  }
  return result;
}

}  // namespace mapfla
