#pragma once

#include <vector>

#include "geocenter/geodesic.hpp"

namespace geocenter {

/// Region bounded by the clockwise chain from u to w and the geodesic path
/// back from w to u. The ring may repeat anchor points (weakly simple).
struct SubPolygon {
  const SimplePolygon* parent = nullptr;
  Chain chain;
  GeodesicPath closing_path;  // from u to w
  std::vector<Point> ring;

  /// Polygon vertices on the chain followed by nothing else; the two chain
  /// endpoints are reported separately as points.
  Point from_point() const { return closing_path.src; }
  Point to_point() const { return closing_path.dst; }
};

SubPolygon subpolygon(const PolygonDomain& dom, const BoundaryCoord& u, const BoundaryCoord& w);

}  // namespace geocenter
