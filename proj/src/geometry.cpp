#include "mapfla/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mapfla {

double dist(const Point2D& p, const Point2D& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

double segdist(const Point2D& p, const Point2D& a0, const Point2D& b0) {
  // Fixed endpoint order makes the result bitwise symmetric in (a, b).
  const bool flip = b0.x < a0.x || (b0.x == a0.x && b0.y < a0.y);
  const Point2D& a = flip ? b0 : a0;
  const Point2D& b = flip ? a0 : b0;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) {
    return dist(p, a);
  }
  // Projection parameter of p onto the supporting line, clamped to the segment.
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return dist(p, Point2D{a.x + t * dx, a.y + t * dy});
}

}  // namespace mapfla
