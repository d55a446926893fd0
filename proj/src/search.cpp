#include "mapfla/search.hpp"

#include <algorithm>
#include <deque>

namespace mapfla {

namespace {

std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

}  // namespace

std::vector<int> bfs_distances(const GraphView& view, VertexId source, const VertexSet& avoid) {
  const Roadmap& g = view.roadmap();
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::deque<VertexId> open{source};
  dist[idx(source)] = 0;
  while (!open.empty()) {
    const VertexId u = open.front();
    open.pop_front();
    for (const Arc& arc : g.arcs(u)) {
      if (dist[idx(arc.to)] != kUnreachable || avoid.contains(arc.to) || !view.allows(arc.edge)) {
        continue;
      }
      dist[idx(arc.to)] = dist[idx(u)] + 1;
      open.push_back(arc.to);
    }
  }
  return dist;
}

std::optional<std::vector<VertexId>> shortest_path(const GraphView& view, const VertexSet& avoid,
                                                   VertexId source, VertexId target) {
  if (source == target) return std::vector<VertexId>{source};
  if (avoid.contains(target)) return std::nullopt;

  // Distances towards the target; the source is the only avoided vertex that
  // may appear, and only as the first path vertex.
  VertexSet blocked = avoid;
  blocked.erase(source);
  const std::vector<int> to_target = bfs_distances(view, target, blocked);
  if (to_target[idx(source)] == kUnreachable) return std::nullopt;

  const Roadmap& g = view.roadmap();
  std::vector<VertexId> path{source};
  VertexId at = source;
  while (at != target) {
    const int want = to_target[idx(at)] - 1;
    for (const Arc& arc : g.arcs(at)) {  // ascending ids: first hit is smallest
      if (to_target[idx(arc.to)] == want && view.allows(arc.edge) &&
          (arc.to == target || !avoid.contains(arc.to))) {
        at = arc.to;
        break;
      }
    }
    path.push_back(at);
  }
  return path;
}

std::vector<VertexId> order_by_distance(std::span<const VertexId> pool,
                                        std::span<const int> distances) {
  std::vector<VertexId> out;
  for (VertexId v : pool) {
    if (distances[idx(v)] != kUnreachable) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
    const int da = distances[idx(a)];
    const int db = distances[idx(b)];
    return da != db ? da < db : a < b;
  });
  return out;
}

}  // namespace mapfla
