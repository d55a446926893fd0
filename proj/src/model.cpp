#include "mapfla/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mapfla {

namespace {

std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

}  // namespace

std::uint64_t Roadmap::key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

Roadmap::Roadmap(std::vector<Point2D> points, std::vector<Edge> edges)
    : points_(std::move(points)), edges_(std::move(edges)), adjacency_(points_.size()) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    if (!contains(u) || !contains(v) || u == v) continue;
    const auto id = static_cast<EdgeId>(i);
    if (!edge_index_.emplace(key(u, v), id).second) continue;
    adjacency_[idx(u)].push_back(Arc{v, id});
    adjacency_[idx(v)].push_back(Arc{u, id});
  }
  for (auto& arcs : adjacency_) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
}

EdgeId Roadmap::find_edge(VertexId u, VertexId v) const {
  if (!contains(u) || !contains(v) || u == v) return kNoEdge;
  const auto it = edge_index_.find(key(u, v));
  return it == edge_index_.end() ? kNoEdge : it->second;
}

State::State(std::span<const VertexId> positions, std::size_t num_vertices)
    : positions_(positions.begin(), positions.end()), occupant_(num_vertices, kNoAgent) {
  for (std::size_t a = 0; a < positions_.size(); ++a) {
    const VertexId v = positions_[a];
    if (v < 0 || idx(v) >= num_vertices) {
      throw std::invalid_argument("agent " + std::to_string(a) + " placed on unknown vertex " +
                                  std::to_string(v));
    }
    if (occupant_[idx(v)] != kNoAgent) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " holds two agents");
    }
    occupant_[idx(v)] = static_cast<AgentId>(a);
  }
}

void State::relocate(AgentId a, VertexId to) {
  VertexId& at = positions_[idx(a)];
  occupant_[idx(at)] = kNoAgent;
  occupant_[idx(to)] = a;
  at = to;
}

Plan reverse(std::span<const Move> plan) {
  Plan out;
  out.reserve(plan.size());
  for (auto it = plan.rbegin(); it != plan.rend(); ++it) out.push_back(it->reversed());
  return out;
}

bool InterferenceCache::interferes(VertexId v, EdgeId e) const {
  const auto set = interferers(e);
  return std::binary_search(set.begin(), set.end(), v);
}

InterferenceCache build_interference(const Roadmap& roadmap, double r) {
  InterferenceCache cache;
  cache.radius_ = r;
  cache.by_edge_.resize(roadmap.num_edges());
  cache.by_vertex_.resize(roadmap.num_vertices());
  for (std::size_t e = 0; e < roadmap.num_edges(); ++e) {
    const auto [u, w] = roadmap.edge(static_cast<EdgeId>(e));
    if (!roadmap.contains(u) || !roadmap.contains(w)) continue;
    const Point2D& a = roadmap.point(u);
    const Point2D& b = roadmap.point(w);
    for (std::size_t v = 0; v < roadmap.num_vertices(); ++v) {
      const auto vid = static_cast<VertexId>(v);
      if (vid == u || vid == w) continue;
      if (sweeps_into(roadmap.point(vid), a, b, r)) {
        cache.by_edge_[e].push_back(vid);
        cache.by_vertex_[v].push_back(static_cast<EdgeId>(e));
      }
    }
  }
  return cache;
}

std::string RoadmapReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.message << '\n';
  return out.str();
}

RoadmapReport validate_roadmap(const Instance& instance) {
  using Kind = RoadmapViolation::Kind;
  RoadmapReport report;
  auto add = [&](Kind kind, std::int64_t a, std::int64_t b, std::string message) {
    report.violations.push_back(RoadmapViolation{kind, a, b, std::move(message)});
  };

  const Roadmap& g = instance.roadmap;
  const double r = instance.radius;
  if (!(r > 0.0) || !std::isfinite(r)) {
    add(Kind::kBadRadius, -1, -1, "agent radius must be positive and finite");
  }

  const auto points = g.points();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      add(Kind::kNonFinitePoint, static_cast<std::int64_t>(i), -1,
          "vertex " + std::to_string(i) + " has a non-finite coordinate");
    }
  }

  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto [u, v] = g.edge(static_cast<EdgeId>(i));
    const std::string name = "edge " + std::to_string(i) + " (" + std::to_string(u) + ", " +
                             std::to_string(v) + ")";
    if (!g.contains(u) || !g.contains(v)) {
      add(Kind::kDanglingEdge, u, v, name + " references a missing vertex");
      continue;
    }
    if (u == v) {
      add(Kind::kSelfLoop, u, v, name + " is a self-loop");
      continue;
    }
    const auto lo = static_cast<std::uint64_t>(std::min(u, v));
    const auto hi = static_cast<std::uint64_t>(std::max(u, v));
    const auto [it, fresh] = seen.emplace((lo << 32) | hi, i);
    if (!fresh) {
      add(Kind::kDuplicateEdge, u, v,
          name + " duplicates edge " + std::to_string(it->second));
    }
  }

  // Strictly more than 2r between any two vertices; ties count as violations.
  if (r > 0.0) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        const double d = dist(points[i], points[j]);
        if (!(d > 2.0 * r + kGeomEps)) {
          std::ostringstream msg;
          msg << "vertices " << i << " and " << j << " are " << d << " apart (need > " << 2.0 * r
              << ")";
          add(Kind::kTooClose, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
              msg.str());
        }
      }
    }
  }

  if (instance.starts.size() != instance.goals.size()) {
    add(Kind::kAgentCountMismatch, static_cast<std::int64_t>(instance.starts.size()),
        static_cast<std::int64_t>(instance.goals.size()), "start and goal counts differ");
  }
  auto check_assignment = [&](const std::vector<VertexId>& where, Kind dup, const char* what) {
    std::vector<std::int64_t> owner(g.num_vertices(), -1);
    for (std::size_t a = 0; a < where.size(); ++a) {
      const VertexId v = where[a];
      if (!g.contains(v)) {
        add(Kind::kBadAgentVertex, static_cast<std::int64_t>(a), v,
            std::string(what) + " of agent " + std::to_string(a) + " is not a vertex");
        continue;
      }
      if (owner[idx(v)] >= 0) {
        add(dup, owner[idx(v)], static_cast<std::int64_t>(a),
            std::string("agents ") + std::to_string(owner[idx(v)]) + " and " +
                std::to_string(a) + " share " + what + " vertex " + std::to_string(v));
      } else {
        owner[idx(v)] = static_cast<std::int64_t>(a);
      }
    }
  };
  check_assignment(instance.starts, Kind::kSharedStart, "start");
  check_assignment(instance.goals, Kind::kSharedGoal, "goal");
  return report;
}

std::vector<VertexId> empty_vertices(const State& state, const Roadmap& roadmap) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < roadmap.num_vertices(); ++v) {
    if (!state.occupied(static_cast<VertexId>(v))) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

State apply_move(const State& state, const Move& m) {
  if (m.agent < 0 || idx(m.agent) >= state.num_agents()) {
    throw std::logic_error("move names unknown agent " + std::to_string(m.agent));
  }
  if (state.position(m.agent) != m.from) {
    throw std::logic_error("agent " + std::to_string(m.agent) + " is not at vertex " +
                           std::to_string(m.from));
  }
  if (m.to < 0 || idx(m.to) >= state.num_vertices() || m.to == m.from) {
    throw std::logic_error("move target " + std::to_string(m.to) + " is invalid");
  }
  if (state.occupied(m.to)) {
    throw std::logic_error("move target " + std::to_string(m.to) + " is occupied");
  }
  State next = state;
  next.relocate(m.agent, m.to);
  return next;
}

State start_state(const Instance& instance) {
  return State(instance.starts, instance.roadmap.num_vertices());
}

}  // namespace mapfla
