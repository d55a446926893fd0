#include "mapfla/edge_clearing.hpp"

#include <algorithm>

#include "mapfla/log.hpp"

namespace mapfla {

namespace {

bool contains(std::span<const VertexId> sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

void append(Plan& into, std::span<const Move> moves) { into.insert(into.end(), moves.begin(), moves.end()); }

}  // namespace

Plan without_agent(std::span<const Move> plan, AgentId agent) {
  Plan out;
  out.reserve(plan.size());
  for (const Move& m : plan) {
    if (m.agent != agent) out.push_back(m);
  }
  return out;
}

MoveEngine::MoveEngine(const Instance& instance, const InterferenceCache& cache,
                       SolverConfig config, std::chrono::steady_clock::time_point deadline)
    : instance_(&instance),
      cache_(&cache),
      config_(std::move(config)),
      deadline_(deadline),
      state_(start_state(instance)) {}

void MoveEngine::reset(State state) {
  state_ = std::move(state);
  plan_.clear();
}

void MoveEngine::execute(const Move& m) {
  state_.relocate(m.agent, m.to);
  plan_.push_back(m);
}

void MoveEngine::rollback(std::size_t mark) {
  while (plan_.size() > mark) {
    const Move m = plan_.back();
    plan_.pop_back();
    state_.relocate(m.agent, m.from);
  }
}

bool MoveEngine::legal(const Move& m) const {
  const Roadmap& g = instance_->roadmap;
  if (!g.contains(m.from) || !g.contains(m.to) || state_.occupant(m.from) != m.agent ||
      state_.occupied(m.to)) {
    return false;
  }
  const EdgeId e = g.find_edge(m.from, m.to);
  if (e == kNoEdge) return false;
  for (VertexId v : cache_->interferers(e)) {
    if (state_.occupied(v)) return false;
  }
  return true;
}

bool MoveEngine::replay(std::span<const Move> moves) {
  const std::size_t entry = mark();
  for (const Move& m : moves) {
    if (!legal(m)) {
      rollback(entry);
      return false;
    }
    execute(m);
  }
  return true;
}

void MoveEngine::check_deadline() const {
  if (std::chrono::steady_clock::now() >= deadline_) throw SolverTimeout{};
}

bool MoveEngine::traverse_edge_naive(VertexId from, VertexId to) {
  if (!instance_->roadmap.contains(from)) return false;
  const Move m{state_.occupant(from), from, to};
  if (m.agent == kNoAgent || !legal(m)) return false;
  execute(m);
  return true;
}

bool MoveEngine::move_la(const GraphView& view, VertexId from, VertexId to,
                         const VertexSet& blocked, int depth) {
  ++move_la_calls_;
  check_deadline();
  const Roadmap& g = instance_->roadmap;
  if (depth > config_.recursion_limit || !g.contains(from) || !g.contains(to)) return false;
  const EdgeId e = g.find_edge(from, to);
  const AgentId mover = state_.occupant(from);
  if (e == kNoEdge || !view.allows(e) || mover == kNoAgent || state_.occupied(to)) return false;

  const Move step{mover, from, to};
  if (config_.mode == SolverMode::kNaive) return traverse_edge_naive(from, to);
  if (legal(step)) {
    execute(step);
    return true;
  }

  const std::size_t entry = mark();
  const std::vector<VertexId> before(state_.positions().begin(), state_.positions().end());

  EdgeContext ctx{from, to, e, cache_->interferers(e), empty_set()};
  for (VertexId v : ctx.interfering) {
    if (!state_.occupied(v)) ctx.free_interfering.insert(v);
  }

  const std::optional<Plan> restore = reversable_edge_cleaning(view, ctx, blocked, depth);
  if (!restore || state_.position(mover) != from || !legal(step)) {
    rollback(entry);
    return false;
  }
  execute(step);
  if (!replay(*restore)) {
    rollback(entry);
    return false;
  }
  for (std::size_t a = 0; a < before.size(); ++a) {
    if (static_cast<AgentId>(a) != mover && state_.position(static_cast<AgentId>(a)) != before[a]) {
      rollback(entry);
      return false;
    }
  }
  SPDLOG_LOGGER_TRACE(&logger(), "move-la depth {} agent {} {}->{}: {} moves", depth, mover, from, to,
               plan_.size() - entry);
  return true;
}

std::optional<Plan> MoveEngine::reversable_edge_cleaning(const GraphView& view,
                                                         const EdgeContext& ctx_in,
                                                         const VertexSet& blocked, int depth) {
  const std::size_t entry = mark();
  const AgentId mover = state_.occupant(ctx_in.from);
  EdgeContext ctx = ctx_in;
  const VertexSet blocked_to = blocked.with(ctx.to);

  Plan restore;  // forward order; reversed on return
  std::vector<VertexId> not_cleared;
  for (VertexId v : ctx.interfering) {
    if (!state_.occupied(v)) {
      ctx.free_interfering.insert(v);
      continue;
    }
    const std::size_t m = mark();
    if (push_to_empty(view, v, blocked_to, ctx, depth)) {
      append(restore, without_agent(since(m), mover));
      ctx.free_interfering.insert(v);
    } else {
      not_cleared.push_back(v);
    }
  }

  for (auto it = not_cleared.begin(); it != not_cleared.end();) {
    const VertexId v = *it;
    if (!state_.occupied(v)) {
      ctx.free_interfering.insert(v);
      it = not_cleared.erase(it);
      continue;
    }
    if (auto undo = push_through_v_from(view, v, blocked, ctx, depth)) {
      append(restore, without_agent(*undo, mover));
      ctx.free_interfering.insert(v);
      it = not_cleared.erase(it);
    } else {
      ++it;
    }
  }

  if (!not_cleared.empty()) {
    // Case 3: the agent could leave only through ctx.to or edges ctx.to
    // interferes with, which no reversal can undo.
    const GraphView without_edge = view.without(std::span<const EdgeId>(&ctx.edge, 1));
    const GraphView reversible = view.without(cache_->blocked_edges(ctx.to));
    for (VertexId v : not_cleared) {
      if (escape_exists(without_edge, v, blocked, ctx) &&
          !escape_exists(reversible, v, blocked_to, ctx)) {
        ++case3_failures_;
        break;
      }
    }
    rollback(entry);
    return std::nullopt;
  }
  return reverse(restore);
}

bool MoveEngine::escape_exists(const GraphView& view, VertexId source, const VertexSet& avoid,
                               const EdgeContext& ctx) const {
  const std::vector<int> dist = bfs_distances(view, source, avoid);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    const auto vid = static_cast<VertexId>(v);
    if (vid != source && dist[v] != kUnreachable && !state_.occupied(vid) &&
        !contains(ctx.interfering, vid)) {
      return true;
    }
  }
  return false;
}

std::vector<VertexId> MoveEngine::candidates(const GraphView& view, VertexId source,
                                             const VertexSet& avoid,
                                             const EdgeContext* ctx) const {
  const std::vector<int> dist = bfs_distances(view, source, avoid);
  std::vector<VertexId> pool;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    const auto vid = static_cast<VertexId>(v);
    if (dist[v] == kUnreachable || state_.occupied(vid) || avoid.contains(vid)) continue;
    if (ctx != nullptr && (contains(ctx->interfering, vid) || ctx->free_interfering.contains(vid))) {
      continue;
    }
    pool.push_back(vid);
  }
  std::vector<VertexId> ordered = order_by_distance(pool, dist);
  if (config_.candidate_limit != 0 && ordered.size() > config_.candidate_limit) {
    ordered.resize(config_.candidate_limit);
  }
  return ordered;
}

bool MoveEngine::push_to_any(GraphView& view, VertexId source, const VertexSet& avoid,
                             std::span<const VertexId> targets, const VertexSet& push_blocked,
                             int depth) {
  for (VertexId target : targets) {
    if (state_.occupied(target)) continue;
    while (true) {
      const auto path = shortest_path(view, avoid, source, target);
      if (!path) break;
      const PushResult pushed = push_along_path(view, *path, push_blocked, depth);
      if (pushed.ok) return true;
      // The failing traversal stays off-limits for the remaining attempts.
      view.remove(pushed.failed_edge);
    }
  }
  return false;
}

bool MoveEngine::push_to_empty(const GraphView& view, VertexId occupied,
                               const VertexSet& blocked, const EdgeContext& ctx, int depth) {
  GraphView reduced = view.without(cache_->blocked_edges(ctx.to));
  const VertexSet avoid = blocked.with(ctx.from);
  const std::vector<VertexId> targets = candidates(reduced, occupied, avoid, &ctx);
  return push_to_any(reduced, occupied, avoid, targets, blocked, depth);
}

PushResult MoveEngine::push_along_path(const GraphView& view, std::span<const VertexId> path,
                                       const VertexSet& blocked, int depth) {
  const std::size_t entry = mark();
  const Roadmap& g = instance_->roadmap;
  if (path.size() < 2 || state_.occupied(path.back())) {
    return PushResult{false, kNoEdge};
  }
  std::size_t slot = path.size() - 1;  // where the next agent has to go
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    if (!state_.occupied(path[i])) continue;
    for (std::size_t j = i; j < slot; ++j) {
      if (!move_la(view, path[j], path[j + 1], blocked, depth + 1)) {
        rollback(entry);
        return PushResult{false, g.find_edge(path[j], path[j + 1])};
      }
    }
    slot = i;
  }
  return PushResult{};
}

std::optional<Plan> MoveEngine::push_through_v_from(const GraphView& view, VertexId occupied,
                                                    const VertexSet& blocked,
                                                    const EdgeContext& ctx, int depth) {
  const Roadmap& g = instance_->roadmap;
  const VertexId from = ctx.from;
  const VertexId to = ctx.to;
  const AgentId escapee = state_.occupant(occupied);
  const VertexSet blocked_to = blocked.with(to);
  const GraphView without_edge = view.without(std::span<const EdgeId>(&ctx.edge, 1));

  for (const Arc& arc : g.arcs(from)) {
    const VertexId n = arc.to;
    if (!view.allows(arc.edge) || n == to || n == occupied || blocked.contains(n)) continue;
    check_deadline();
    const std::size_t start = mark();
    GraphView reduced = view.without(cache_->blocked_edges(to));

    // Make room on n for the mover.
    if (state_.occupied(n)) {
      VertexSet avoid = blocked_to.with(from);
      avoid.insert(occupied);
      EdgeContext with_to = ctx;
      with_to.free_interfering.insert(to);
      const std::vector<VertexId> targets = candidates(reduced, n, avoid, &with_to);
      if (!push_to_any(reduced, n, avoid, targets, blocked_to, depth)) {
        rollback(start);
        continue;
      }
    }
    const Plan cleared(since(start).begin(), since(start).end());

    // Step the mover aside; edge `from`-`to` is off the table for this.
    const std::size_t aside = mark();
    if (!move_la(without_edge, from, n, blocked, depth + 1)) {
      rollback(start);
      continue;
    }
    const Plan step_aside(since(aside).begin(), since(aside).end());

    // Keep the step-aside participants where they are so the reversal can
    // bring the mover back.
    VertexSet avoid = blocked_to;
    VertexSet excluded = ctx.free_interfering;
    for (const Move& m : step_aside) {
      avoid.insert(state_.position(m.agent));
      excluded.insert(m.from);
      excluded.insert(m.to);
    }
    const EdgeId aside_edge = g.find_edge(from, n);
    for (VertexId v : cache_->interferers(aside_edge)) excluded.insert(v);

    const std::vector<int> dist = bfs_distances(reduced, occupied, avoid);
    std::vector<VertexId> pool;
    for (std::size_t v = 0; v < dist.size(); ++v) {
      const auto vid = static_cast<VertexId>(v);
      if (dist[v] == kUnreachable || state_.occupied(vid) || avoid.contains(vid) ||
          excluded.contains(vid) || contains(ctx.interfering, vid)) {
        continue;
      }
      pool.push_back(vid);
    }
    std::vector<VertexId> targets = order_by_distance(pool, dist);
    if (config_.candidate_limit != 0 && targets.size() > config_.candidate_limit) {
      targets.resize(config_.candidate_limit);
    }

    for (VertexId target : targets) {
      bool next_target = false;
      while (!next_target) {
        const auto path = shortest_path(reduced, avoid, occupied, target);
        if (!path) break;
        const std::size_t escape = mark();
        const PushResult pushed = push_along_path(reduced, *path, blocked_to, depth);
        if (!pushed.ok) {
          reduced.remove(pushed.failed_edge);
          continue;
        }
        Plan undo = cleared;
        append(undo, since(escape));
        if (replay(reverse(without_agent(step_aside, escapee)))) {
          return undo;
        }
        rollback(escape);
        next_target = true;
      }
    }
    rollback(start);
  }
  return std::nullopt;
}

bool MoveEngine::push_away(const GraphView& view, VertexId at, const VertexSet& blocked,
                           int depth) {
  if (!state_.occupied(at)) return true;
  GraphView working = view;
  const std::vector<VertexId> targets = candidates(working, at, blocked, nullptr);
  return push_to_any(working, at, blocked, targets, blocked, depth);
}

}  // namespace mapfla
