#include "geocenter/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geocenter {

std::vector<Point> GeodesicPath::points(const SimplePolygon& poly) const {
  std::vector<Point> out{src};
  for (int a : anchors) out.push_back(poly.vertex(a));
  out.push_back(dst);
  return out;
}

Point GeodesicPath::point_at(const SimplePolygon& poly, double s) const {
  const std::vector<Point> pts = points(poly);
  if (s <= 0.0) return src;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = dist(pts[i], pts[i + 1]);
    if (s <= len) return len > 0.0 ? lerp(pts[i], pts[i + 1], s / len) : pts[i];
    s -= len;
  }
  return dst;
}

PolygonDomain::PolygonDomain(SimplePolygon poly) : tri_(poly) {
  vertex_maps_.reserve(static_cast<std::size_t>(poly.size()));
  for (int v = 0; v < poly.size(); ++v) {
    vertex_maps_.push_back(std::make_unique<ShortestPathMap>(tri_, tri_.polygon().vertex(v)));
  }
}

void PolygonDomain::require_inside(const Point& p) const {
  if (!is_finite(p) || point_in_polygon(polygon(), p) == Containment::Outside) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") lies outside the polygon";
    throw GeometryError(ErrorKind::PointOutside, msg.str());
  }
}

Triangulation triangulate(const SimplePolygon& poly) { return Triangulation(poly); }

GeodesicPath shortest_path(const PolygonDomain& dom, const Point& x, const Point& y) {
  dom.require_inside(x);
  dom.require_inside(y);
  const Triangulation& tri = dom.triangulation();
  FunnelPropagator fp(tri, x);
  GeodesicPath path{x, y, {}, 0.0};
  const int ty = tri.locate_nearest(y);
  const Funnel f = fp.walk_to(ty);
  int node = fp.root_node();
  if (ty != fp.root_triangle()) node = f.chain[fp.anchor_position(f, y)];
  path.length = fp.node(node).dist + dist(fp.node(node).p, y);
  for (int id = node; id >= 0; id = fp.node(id).parent) {
    const PathNode& nd = fp.node(id);
    if (nd.vertex >= 0 && nd.p != x && nd.p != y) path.anchors.push_back(nd.vertex);
  }
  std::reverse(path.anchors.begin(), path.anchors.end());
  return path;
}

GeodesicPath shortest_path(const SimplePolygon& poly, const Point& x, const Point& y) {
  const PolygonDomain dom(poly);
  return shortest_path(dom, x, y);
}

double geodesic_distance(const PolygonDomain& dom, const Point& x, const Point& y) {
  dom.require_inside(x);
  dom.require_inside(y);
  const Triangulation& tri = dom.triangulation();
  FunnelPropagator fp(tri, x);
  const int ty = tri.locate_nearest(y);
  const Funnel f = fp.walk_to(ty);
  int node = fp.root_node();
  if (ty != fp.root_triangle()) node = f.chain[fp.anchor_position(f, y)];
  return fp.node(node).dist + dist(fp.node(node).p, y);
}

double geodesic_distance(const SimplePolygon& poly, const Point& x, const Point& y) {
  const PolygonDomain dom(poly);
  return geodesic_distance(dom, x, y);
}

ShortestPathTree shortest_path_tree(const PolygonDomain& dom, const Point& root) {
  dom.require_inside(root);
  const ShortestPathMap map(dom.triangulation(), root);
  ShortestPathTree tree{root, {}, {}};
  const int n = dom.size();
  tree.parent.resize(static_cast<std::size_t>(n));
  tree.dist.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const PathNode& nd = map.node(v);
    tree.dist[v] = nd.dist;
    tree.parent[v] = nd.parent >= 0 ? map.node(nd.parent).vertex : -1;
  }
  return tree;
}

ShortestPathMap shortest_path_map(const PolygonDomain& dom, const Point& root) {
  dom.require_inside(root);
  return ShortestPathMap(dom.triangulation(), root);
}

bool path_convexity_check(const PolygonDomain& dom, const Point& a, const Point& b, const Point& c,
                          int k) {
  const GeodesicPath path = shortest_path(dom, b, c);
  const ShortestPathMap from_a(dom.triangulation(), a);
  k = std::max(k, 3);
  std::vector<double> f(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double s = path.length * static_cast<double>(i) / (k - 1);
    f[i] = from_a.distance(path.point_at(dom.polygon(), s));
  }
  const double bound = std::max(from_a.distance(b), from_a.distance(c)) + 1e-9;
  for (int i = 0; i < k; ++i) {
    if (f[i] > bound) return false;
    if (i > 0 && i + 1 < k && f[i - 1] - 2.0 * f[i] + f[i + 1] < -1e-7) return false;
  }
  return true;
}

}  // namespace geocenter
