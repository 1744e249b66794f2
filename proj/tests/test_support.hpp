#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geocenter/polygon.hpp"

namespace geocenter::testing {

/// Uniform points strictly inside the polygon (rejection sampling).
inline std::vector<Point> interior_points(const SimplePolygon& poly, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(poly.bbox_min().x, poly.bbox_max().x);
  std::uniform_real_distribution<double> uy(poly.bbox_min().y, poly.bbox_max().y);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    const Point p{ux(rng), uy(rng)};
    if (point_in_polygon(poly, p) == Containment::Inside) out.push_back(p);
  }
  return out;
}

/// Halton sequence point in the unit square.
inline double radical_inverse(unsigned index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}


/// First `count` points of the 2-3 Halton sequence, scaled to the bounding box,
/// that fall strictly inside the polygon.
inline std::vector<Point> halton_points(const SimplePolygon& poly, int count) {
  const Point lo = poly.bbox_min(), hi = poly.bbox_max();
  std::vector<Point> out;
  for (unsigned k = 1; static_cast<int>(out.size()) < count; ++k) {
    const Point p{lo.x + (hi.x - lo.x) * radical_inverse(k, 2), lo.y + (hi.y - lo.y) * radical_inverse(k, 3)};
    if (point_in_polygon(poly, p) == Containment::Inside) out.push_back(p);
  }
  return out;
}

}  // namespace geocenter::testing
