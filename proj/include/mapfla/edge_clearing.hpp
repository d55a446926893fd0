#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mapfla/model.hpp"
#include "mapfla/search.hpp"
#include "mapfla/solver.hpp"

namespace mapfla {

/// Thrown from inside the engine once the wall-clock budget is spent.
struct SolverTimeout : std::runtime_error {
  SolverTimeout() : std::runtime_error("time limit exceeded") {}
};

/// The directed edge under traversal together with its interference data.
struct EdgeContext {
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;
  EdgeId edge = kNoEdge;
  std::span<const VertexId> interfering;  // cache entry of `edge`
  VertexSet free_interfering;             // interfering vertices known to be empty
};

struct PushResult {
  bool ok = true;
  EdgeId failed_edge = kNoEdge;  // the traversal that could not be made when !ok
};

/// Mutable single-run state: the current joint state plus the plan that led
/// there from the start state. Every procedure executes moves for real and
/// rolls back (plan truncation + state undo) whenever it reports failure, so a
/// false/empty return leaves state and plan exactly as on entry.
class MoveEngine {
 public:
  MoveEngine(const Instance& instance, const InterferenceCache& cache, SolverConfig config,
             std::chrono::steady_clock::time_point deadline);

  const Instance& instance() const { return *instance_; }
  const InterferenceCache& cache() const { return *cache_; }
  const State& state() const { return state_; }
  const Plan& plan() const { return plan_; }
  std::size_t move_la_calls() const { return move_la_calls_; }
  std::size_t case3_failures() const { return case3_failures_; }

  /// Reset to `state` with an empty plan.
  void reset(State state);

  std::size_t mark() const { return plan_.size(); }
  void rollback(std::size_t mark);
  std::span<const Move> since(std::size_t mark) const {
    return std::span<const Move>(plan_).subspan(mark);
  }

  /// Legal right now: mover at m.from, edge present, target free, and no
  /// occupied vertex interferes with the edge.
  bool legal(const Move& m) const;
  /// Executes `moves` in order, checking each; on the first illegal move
  /// everything replayed so far is undone and false is returned.
  bool replay(std::span<const Move> moves);

  /// Throws SolverTimeout when past the deadline.
  void check_deadline() const;

  /// Moves the agent at `from` to `to` along an edge of `view`, temporarily
  /// relocating interfering agents; on success every other agent ends where
  /// it started.
  bool move_la(const GraphView& view, VertexId from, VertexId to, const VertexSet& blocked,
               int depth);

  /// Clears every interfering vertex of ctx.edge. On success the clearing
  /// moves are executed and the returned plan restores the displaced agents
  /// once the mover sits on ctx.to (it never moves the mover).
  std::optional<Plan> reversable_edge_cleaning(const GraphView& view, const EdgeContext& ctx,
                                               const VertexSet& blocked, int depth);

  /// Relocates the agent on `occupied` to an empty non-interfering vertex
  /// along a path avoiding `blocked` and ctx.from, inside the view with every
  /// edge interfered by ctx.to removed.
  bool push_to_empty(const GraphView& view, VertexId occupied, const VertexSet& blocked,
                     const EdgeContext& ctx, int depth);

  /// Shifts the agents on `path` towards its free last vertex, last agent
  /// first. Each elementary step is a move-la at depth + 1.
  PushResult push_along_path(const GraphView& view, std::span<const VertexId> path,
                             const VertexSet& blocked, int depth);

  /// Lets the agent on `occupied` escape through ctx.from: the mover steps
  /// aside to a neighbour, the interfering agent is pushed away, and the mover
  /// comes back. Returns the sub-plan to be undone after the traversal.
  std::optional<Plan> push_through_v_from(const GraphView& view, VertexId occupied,
                                          const VertexSet& blocked, const EdgeContext& ctx,
                                          int depth);

  /// Baseline traversal: executes the move iff it is legal as-is.
  bool traverse_edge_naive(VertexId from, VertexId to);

  /// Moves the agent on `at` to the nearest reachable empty vertex outside
  /// `blocked` (chains of agents along the way shift along).
  bool push_away(const GraphView& view, VertexId at, const VertexSet& blocked, int depth);

  VertexSet empty_set() const { return VertexSet(instance_->roadmap.num_vertices()); }

 private:
  void execute(const Move& m);
  bool push_to_any(GraphView& view, VertexId source, const VertexSet& avoid,
                   std::span<const VertexId> targets, const VertexSet& push_blocked, int depth);
  bool escape_exists(const GraphView& view, VertexId source, const VertexSet& avoid,
                     const EdgeContext& ctx) const;
  std::vector<VertexId> candidates(const GraphView& view, VertexId source,
                                   const VertexSet& avoid, const EdgeContext* ctx) const;

  const Instance* instance_;
  const InterferenceCache* cache_;
  SolverConfig config_;
  std::chrono::steady_clock::time_point deadline_;
  State state_;
  Plan plan_;
  std::size_t move_la_calls_ = 0;
  std::size_t case3_failures_ = 0;
};

/// `plan` without the moves of `agent`.
Plan without_agent(std::span<const Move> plan, AgentId agent);

}  // namespace mapfla
