#pragma once

#include <memory>
#include <vector>

#include "geocenter/path_map.hpp"
#include "geocenter/triangulation.hpp"

namespace geocenter {

struct GeodesicPath {
  Point src;
  Point dst;
  std::vector<int> anchors;  // reflex vertices, ordered from src to dst
  double length = 0.0;

  /// src, anchor points, dst.
  std::vector<Point> points(const SimplePolygon& poly) const;
  /// Point at arc length s from src (clamped).
  Point point_at(const SimplePolygon& poly, double s) const;
};

struct ShortestPathTree {
  Point root;
  std::vector<int> parent;  // predecessor vertex index, -1 for the root
  std::vector<double> dist;
};

/// Polygon plus the structures every query needs: triangulation and one
/// shortest path map per vertex. Immutable after construction.
class PolygonDomain {
 public:
  explicit PolygonDomain(SimplePolygon poly);
  PolygonDomain(const PolygonDomain&) = delete;
  PolygonDomain& operator=(const PolygonDomain&) = delete;

  const SimplePolygon& polygon() const { return tri_.polygon(); }
  const Triangulation& triangulation() const { return tri_; }
  int size() const { return polygon().size(); }

  const ShortestPathMap& vertex_map(int v) const { return *vertex_maps_[polygon().wrap(v)]; }
  double vertex_distance(int u, int v) const { return vertex_map(u).vertex_distance(polygon().wrap(v)); }

  /// Throws PointOutside unless p is inside or on the boundary.
  void require_inside(const Point& p) const;

 private:
  Triangulation tri_;
  std::vector<std::unique_ptr<ShortestPathMap>> vertex_maps_;
};

Triangulation triangulate(const SimplePolygon& poly);

GeodesicPath shortest_path(const PolygonDomain& dom, const Point& x, const Point& y);
GeodesicPath shortest_path(const SimplePolygon& poly, const Point& x, const Point& y);
double geodesic_distance(const PolygonDomain& dom, const Point& x, const Point& y);
double geodesic_distance(const SimplePolygon& poly, const Point& x, const Point& y);

ShortestPathTree shortest_path_tree(const PolygonDomain& dom, const Point& root);
ShortestPathMap shortest_path_map(const PolygonDomain& dom, const Point& root);

/// Samples d(a, .) at k points spaced evenly by arc length along the path from
/// b to c and checks it is convex and bounded by the endpoint values.
bool path_convexity_check(const PolygonDomain& dom, const Point& a, const Point& b, const Point& c,
                          int k);

}  // namespace geocenter
