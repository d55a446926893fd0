#pragma once

namespace mapfla {

/// Threshold slack for every geometric comparison. A distance within this
/// margin of a limit counts as violating the limit.
inline constexpr double kGeomEps = 1e-9;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Euclidean distance between two points.
double dist(const Point2D& p, const Point2D& q);

/// Minimum distance from `p` to the closed segment [a, b]. A degenerate
/// segment (a == b) reduces to dist(p, a).
double segdist(const Point2D& p, const Point2D& a, const Point2D& b);

/// True when a disk of radius `r` swept along [a, b] overlaps a disk of
/// radius `r` resting at `p`, i.e. segdist(p, a, b) <= 2r + eps.
inline bool sweeps_into(const Point2D& p, const Point2D& a, const Point2D& b, double r) {
  return segdist(p, a, b) <= 2.0 * r + kGeomEps;
}

}  // namespace mapfla
