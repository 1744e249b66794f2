#pragma once

#include <cstdint>
#include <vector>

#include "geocenter/subpolygon.hpp"
#include "geocenter/voronoi.hpp"

namespace geocenter {

struct OneCenterResult {
  Point center;
  double radius = 0.0;
  std::vector<int> witnesses;  // vertices at distance radius; -1 marks a non-vertex chain end
};

/// Geodesic 1-center of the polygon: the lowest point of the upper envelope
/// of the vertex distance functions, searched over the farthest-site diagram.
OneCenterResult one_center(const PolygonDomain& dom);
/// 1-center of a subpolygon P(u, w) using the parent's geodesics.
OneCenterResult one_center(const PolygonDomain& dom, const SubPolygon& sub);

struct RestrictedRadius {
  BoundaryCoord alpha;
  BoundaryCoord beta;
  double radius = 0.0;
  Point center;
};

/// Radius of P(alpha, beta).
RestrictedRadius restricted_radius(const PolygonDomain& dom, const BoundaryCoord& alpha,
                                   const BoundaryCoord& beta);
double maxrad(const PolygonDomain& dom, const BoundaryCoord& alpha, const BoundaryCoord& beta);

/// Number of restricted centers that had to be moved onto the closing path
/// because the unconstrained minimizer left the subpolygon.
std::uint64_t restricted_projection_count();

}  // namespace geocenter
