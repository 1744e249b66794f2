#pragma once

#include <vector>

#include "geocenter/geodesic.hpp"
#include "geocenter/polygon.hpp"

namespace geocenter {

/// Visibility graph over the polygon vertices; query points are attached on
/// demand. Deliberately brute force: O(n^3) construction.
class VisibilityGraph {
 public:
  explicit VisibilityGraph(const SimplePolygon& poly);

  /// True if the closed segment ab stays inside the closed polygon.
  bool visible(const Point& a, const Point& b) const;
  /// Dijkstra over the graph with x and y attached.
  double distance(const Point& x, const Point& y) const;

  const SimplePolygon& polygon() const { return poly_; }

 private:
  SimplePolygon poly_;
  std::vector<std::vector<double>> weight_;  // vertex-to-vertex, +inf if blocked
};

double visgraph_distance(const SimplePolygon& poly, const Point& x, const Point& y);

struct GridCenter {
  Point center;
  double radius = 0.0;
};

/// Best interior grid point of the max-vertex distance, then local polishing.
GridCenter grid_one_center(const PolygonDomain& dom, int resolution);

struct SampledTwoCenter {
  double radius = 0.0;
  BoundaryCoord alpha;
  BoundaryCoord beta;
};

/// Minimum of maxrad over evenly spaced boundary sample pairs, with a
/// golden-section polish of the best pair's two edge parameters.
SampledTwoCenter sampled_two_center(const PolygonDomain& dom, int boundary_samples,
                                    bool polish = true);

}  // namespace geocenter
