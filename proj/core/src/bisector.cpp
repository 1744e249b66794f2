#include "geocenter/bisector.hpp"

#include <algorithm>
#include <cmath>

#include "geocenter/errors.hpp"

namespace geocenter {
namespace {

}  // namespace

LevelGradient level_gradient(const Site& a, const Site& b, const Point& q, int t) {
  const auto la = a.map->locate_in(t, q);
  const auto lb = b.map->locate_in(t, q);
  const PathNode& na = a.map->node(la.node);
  const PathNode& nb = b.map->node(lb.node);
  const double ra = dist(na.p, q), rb = dist(nb.p, q);
  LevelGradient out;
  out.g = (na.dist + ra) - (nb.dist + rb);
  const Point ua = ra > 0.0 ? (q - na.p) / ra : Point{};
  const Point ub = rb > 0.0 ? (q - nb.p) / rb : Point{};
  out.grad = ua - ub;
  return out;
}

namespace {

// Newton steps along the gradient back onto the level set.
bool correct(const Site& a, const Site& b, const Triangulation& tri, Point& q, double tol) {
  for (int i = 0; i < 30; ++i) {
    const int t = tri.locate(q);
    if (t < 0) return false;
    const LevelGradient gr = level_gradient(a, b, q, t);
    if (std::abs(gr.g) <= tol) return true;
    const double n2 = dot(gr.grad, gr.grad);
    if (n2 < 1e-18) return false;
    q = q - gr.grad * (gr.g / n2);
  }
  const int t = tri.locate(q);
  return t >= 0 && std::abs(level_gradient(a, b, q, t).g) <= 1e3 * tol;
}

double level_value(const Site& a, const Site& b, const Point& q) {
  return a.map->distance(q) - b.map->distance(q);
}

// Point at signed arc length s from boundary coordinate c (clockwise positive).
Point walk_boundary(const SimplePolygon& poly, BoundaryCoord c, double s) {
  while (true) {
    const double len = poly.edge_length(c.edge);
    if (s >= 0.0) {
      const double rest = (1.0 - c.t) * len;
      if (s <= rest) return poly.point_at({c.edge, c.t + s / len});
      s -= rest;
      c = {poly.wrap(c.edge + 1), 0.0};
    } else {
      const double rest = c.t * len;
      if (-s <= rest) return poly.point_at({c.edge, c.t + s / len});
      s += rest;
      c = {poly.wrap(c.edge - 1), 1.0};
    }
  }
}

// Zero of the level value on the boundary closest to `near` within `window`
// arc length; `near` itself when there is none.
Point boundary_zero(const Site& a, const Site& b, const Point& near, double window) {
  const SimplePolygon& poly = a.map->triangulation().polygon();
  const BoundaryCoord c = project_to_boundary(poly, near);
  const Point base = poly.point_at(c);
  constexpr int kSteps = 64;
  for (int k = 0; k < kSteps; ++k) {
    for (double sign : {1.0, -1.0}) {
      double s0 = sign * window * k / kSteps, s1 = sign * window * (k + 1) / kSteps;
      double g0 = level_value(a, b, walk_boundary(poly, c, s0));
      const double g1 = level_value(a, b, walk_boundary(poly, c, s1));
      if (g0 == 0.0) return walk_boundary(poly, c, s0);
      if ((g0 < 0.0) == (g1 < 0.0)) continue;
      for (int i = 0; i < 100; ++i) {
        const double sm = 0.5 * (s0 + s1);
        const double gm = level_value(a, b, walk_boundary(poly, c, sm));
        if ((gm < 0.0) == (g0 < 0.0)) {
          s0 = sm;
          g0 = gm;
        } else {
          s1 = sm;
        }
      }
      return walk_boundary(poly, c, 0.5 * (s0 + s1));
    }
  }
  return base;
}

}  // namespace

LevelStep level_step(const Site& a, const Site& b, const Point& q, const Point& dir, double h, Point* next) {
  const Triangulation& tri = a.map->triangulation();
  const SimplePolygon& poly = tri.polygon();
  const double scale = dist(poly.bbox_min(), poly.bbox_max());
  const double tol = 1e-13 * (1.0 + scale);
  const int t = tri.locate_nearest(q);
  const LevelGradient gr = level_gradient(a, b, q, t);
  const double gn = norm(gr.grad);
  if (gn < 1e-9) return LevelStep::Flat;
  Point tan = perp(gr.grad) / gn;
  if (dot(tan, dir) < 0.0) tan = tan * -1.0;
  double hh = h;
  for (int tries = 0; tries < 12; ++tries) {
    Point p = q + tan * hh;
    if (tri.locate(p) < 0) break;
    if (correct(a, b, tri, p, tol) && dist(p, q) < 2.0 * hh) {
      *next = p;
      return LevelStep::Ok;
    }
    hh *= 0.5;
  }
  // Leaving the polygon: find where the step crosses the boundary, then the
  // nearest zero of the level value along the boundary.
  double lo = 0.0, hi = hh;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tri.locate(q + tan * mid) >= 0 ? lo : hi) = mid;
  }
  *next = boundary_zero(a, b, q + tan * lo, 8.0 * h);
  return LevelStep::Boundary;
}

std::vector<Point> trace_level_set(const Site& a, const Site& b, const Point& start, Point dir, double h,
                                   const Point* stop, bool* hit_boundary) {
  const SimplePolygon& poly = a.map->triangulation().polygon();
  const double scale = dist(poly.bbox_min(), poly.bbox_max());
  std::vector<Point> out;
  *hit_boundary = false;
  Point q = start;
  const int max_steps = static_cast<int>(8.0 * scale / h) + 100;
  for (int step = 0; step < max_steps; ++step) {
    if (stop && dist(q, *stop) <= 1.5 * h) {
      out.push_back(*stop);
      return out;
    }
    Point next;
    const LevelStep st = level_step(a, b, q, dir, h, &next);
    if (st == LevelStep::Flat) return out;
    out.push_back(next);
    if (st == LevelStep::Boundary) {
      *hit_boundary = true;
      return out;
    }
    dir = next - q;
    q = next;
  }
  return out;
}

BisectingCurve bisecting_curve(const PolygonDomain& dom, const Point& x, const Point& y) {
  dom.require_inside(x);
  dom.require_inside(y);
  if (dist(x, y) <= kOnBoundaryTol) throw GeometryError(ErrorKind::CoincidentPoints, "bisector needs distinct points");
  SiteSet sites(dom);
  sites.add_point(x);
  sites.add_point(y);
  const double d = site_distance(sites[0], sites[1]);
  const Point mid = point_along(sites[0], sites[1], 0.5 * d);
  const Point toward = point_along(sites[0], sites[1], std::min(d, 0.5 * d + 1e-3 * d));
  const Point back = mid - toward;
  const Point side = perp(norm(back) > 0.0 ? back : Point{1.0, 0.0});
  const SimplePolygon& poly = dom.polygon();
  const double h = 2e-3 * dist(poly.bbox_min(), poly.bbox_max());

  BisectingCurve out;
  out.x = x;
  out.y = y;
  bool hit_a = false, hit_b = false;
  std::vector<Point> left = trace_level_set(sites[0], sites[1], mid, side, h, nullptr, &hit_a);
  std::vector<Point> right = trace_level_set(sites[0], sites[1], mid, side * -1.0, h, nullptr, &hit_b);
  std::reverse(left.begin(), left.end());
  out.points = std::move(left);
  out.points.push_back(mid);
  out.points.insert(out.points.end(), right.begin(), right.end());
  out.from = poly.canonical(project_to_boundary(poly, out.points.front()));
  out.to = poly.canonical(project_to_boundary(poly, out.points.back()));
  out.from_on_boundary = hit_a;
  out.to_on_boundary = hit_b;
  return out;
}

}  // namespace geocenter
