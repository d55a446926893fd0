#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapfla/geometry.hpp"

namespace mapfla {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using AgentId = std::int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;
inline constexpr AgentId kNoAgent = -1;

/// Undirected edge as listed in the roadmap; (u, v) order is only kept for
/// serialization.
struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Adjacency entry: neighbouring vertex plus the edge that reaches it.
struct Arc {
  VertexId to = kNoVertex;
  EdgeId edge = kNoEdge;
};

/// Graph embedded in the plane. Edges are straight segments between vertex
/// points. Malformed edges (self-loops, dangling ids, duplicates) are kept in
/// the edge list so validate_roadmap can report them, but they never enter
/// the adjacency index.
class Roadmap {
 public:
  Roadmap() = default;
  Roadmap(std::vector<Point2D> points, std::vector<Edge> edges);

  std::size_t num_vertices() const { return points_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool contains(VertexId v) const { return v >= 0 && static_cast<std::size_t>(v) < points_.size(); }

  const Point2D& point(VertexId v) const { return points_[static_cast<std::size_t>(v)]; }
  std::span<const Point2D> points() const { return points_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  /// Neighbours of `v` in ascending vertex order.
  std::span<const Arc> arcs(VertexId v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  std::size_t degree(VertexId v) const { return arcs(v).size(); }

  /// Id of the (first listed) edge joining u and v, or kNoEdge.
  EdgeId find_edge(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return find_edge(u, v) != kNoEdge; }

  friend bool operator==(const Roadmap& a, const Roadmap& b) {
    return a.points_ == b.points_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(VertexId u, VertexId v);

  std::vector<Point2D> points_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

/// A MAPF-LA problem: disks of radius `radius` that must travel from
/// starts[i] to goals[i] on the roadmap. K = starts.size().
struct Instance {
  Roadmap roadmap;
  double radius = 0.0;
  std::vector<VertexId> starts;
  std::vector<VertexId> goals;

  std::size_t num_agents() const { return starts.size(); }
};

/// Injective agent -> vertex assignment, with the inverse occupancy map kept
/// alongside.
class State {
 public:
  State() = default;
  /// Throws std::invalid_argument on out-of-range or repeated vertices.
  State(std::span<const VertexId> positions, std::size_t num_vertices);

  std::size_t num_agents() const { return positions_.size(); }
  std::size_t num_vertices() const { return occupant_.size(); }
  std::span<const VertexId> positions() const { return positions_; }
  VertexId position(AgentId a) const { return positions_[static_cast<std::size_t>(a)]; }
  AgentId occupant(VertexId v) const { return occupant_[static_cast<std::size_t>(v)]; }
  bool occupied(VertexId v) const { return occupant(v) != kNoAgent; }

  /// Unchecked relocation; callers guarantee `to` is free.
  void relocate(AgentId a, VertexId to);

  friend bool operator==(const State& a, const State& b) { return a.positions_ == b.positions_; }

 private:
  std::vector<VertexId> positions_;
  std::vector<AgentId> occupant_;
};

/// Single-agent traversal of one edge.
struct Move {
  AgentId agent = kNoAgent;
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;

  Move reversed() const { return Move{agent, to, from}; }
  friend bool operator==(const Move&, const Move&) = default;
};

using Plan = std::vector<Move>;

/// Moves in reverse order with direction flipped.
Plan reverse(std::span<const Move> plan);

/// Precomputed edge/vertex interference at a fixed radius: vertex v interferes
/// with edge e when v is not an endpoint and segdist(v, e) <= 2r + eps.
class InterferenceCache {
 public:
  InterferenceCache() = default;

  /// Sorted interfering vertices of edge `e`.
  std::span<const VertexId> interferers(EdgeId e) const { return by_edge_[static_cast<std::size_t>(e)]; }
  /// Sorted edges that vertex `v` interferes with.
  std::span<const EdgeId> blocked_edges(VertexId v) const { return by_vertex_[static_cast<std::size_t>(v)]; }
  bool interferes(VertexId v, EdgeId e) const;
  double radius() const { return radius_; }

  friend bool operator==(const InterferenceCache&, const InterferenceCache&) = default;
  friend InterferenceCache build_interference(const Roadmap& roadmap, double r);

 private:
  double radius_ = 0.0;
  std::vector<std::vector<VertexId>> by_edge_;
  std::vector<std::vector<EdgeId>> by_vertex_;
};

InterferenceCache build_interference(const Roadmap& roadmap, double r);

struct RoadmapViolation {
  enum class Kind {
    kBadRadius,
    kNonFinitePoint,
    kSelfLoop,
    kDanglingEdge,
    kDuplicateEdge,
    kTooClose,
    kAgentCountMismatch,
    kBadAgentVertex,
    kSharedStart,
    kSharedGoal,
  };
  Kind kind;
  std::int64_t a = -1;  // vertex, edge or agent index depending on kind
  std::int64_t b = -1;
  std::string message;
};

struct RoadmapReport {
  std::vector<RoadmapViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every Instance invariant and lists all violations found.
RoadmapReport validate_roadmap(const Instance& instance);

/// Vertices not occupied in `state`, ascending.
std::vector<VertexId> empty_vertices(const State& state, const Roadmap& roadmap);

/// Throws std::logic_error when the mover is absent, not at m.from, or m.to is
/// occupied or out of range.
State apply_move(const State& state, const Move& m);

/// State at the agents' start vertices.
State start_state(const Instance& instance);

}  // namespace mapfla
