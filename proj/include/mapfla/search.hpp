#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mapfla/model.hpp"

namespace mapfla {

/// Roadmap with a subset of edges switched off.
class GraphView {
 public:
  explicit GraphView(const Roadmap& roadmap) : roadmap_(&roadmap), removed_(roadmap.num_edges(), 0) {}

  const Roadmap& roadmap() const { return *roadmap_; }
  bool allows(EdgeId e) const { return e != kNoEdge && removed_[static_cast<std::size_t>(e)] == 0; }
  bool allows(VertexId u, VertexId v) const { return allows(roadmap_->find_edge(u, v)); }
  void remove(EdgeId e) {
    if (e != kNoEdge) removed_[static_cast<std::size_t>(e)] = 1;
  }
  void remove(std::span<const EdgeId> edges) {
    for (EdgeId e : edges) remove(e);
  }
  GraphView without(std::span<const EdgeId> edges) const {
    GraphView copy = *this;
    copy.remove(edges);
    return copy;
  }

 private:
  const Roadmap* roadmap_;
  std::vector<char> removed_;
};

/// Membership mask over roadmap vertices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t num_vertices) : mask_(num_vertices, 0) {}

  bool contains(VertexId v) const { return v >= 0 && mask_[static_cast<std::size_t>(v)] != 0; }
  void insert(VertexId v) { mask_[static_cast<std::size_t>(v)] = 1; }
  void erase(VertexId v) { mask_[static_cast<std::size_t>(v)] = 0; }
  VertexSet with(VertexId v) const {
    VertexSet copy = *this;
    copy.insert(v);
    return copy;
  }
  std::size_t capacity() const { return mask_.size(); }

 private:
  std::vector<char> mask_;
};

inline constexpr int kUnreachable = -1;

/// Hop distances from `source` over vertices outside `avoid`. The source is
/// always admitted.
std::vector<int> bfs_distances(const GraphView& view, VertexId source, const VertexSet& avoid);

/// Shortest path from `source` to `target` through vertices outside `avoid`
/// (source admitted regardless). Among equal-length paths the
/// lexicographically smallest vertex sequence wins.
std::optional<std::vector<VertexId>> shortest_path(const GraphView& view, const VertexSet& avoid,
                                                   VertexId source, VertexId target);

/// `pool` filtered to vertices reachable in `distances`, ordered by
/// (distance, id).
std::vector<VertexId> order_by_distance(std::span<const VertexId> pool,
                                        std::span<const int> distances);

}  // namespace mapfla
