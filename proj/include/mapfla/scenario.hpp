#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapfla/model.hpp"

namespace mapfla {

/// Ordered start/goal pairs on a named roadmap. Benchmarks use prefixes of
/// the pair list.
struct Scenario {
  std::string roadmap;  // path or preset name
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::uint64_t seed = 0;  // generator seed; not serialized

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.roadmap == b.roadmap && a.pairs == b.pairs;
  }
};

/// Instance made of the first `n` pairs of `scenario`. Throws
/// std::invalid_argument when n exceeds the pair count.
Instance make_instance(const Roadmap& roadmap, double radius, const Scenario& scenario,
                       std::size_t n);

}  // namespace mapfla
