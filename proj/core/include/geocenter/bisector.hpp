#pragma once

#include <vector>

#include "geocenter/sites.hpp"

namespace geocenter {

/// Curve of points equidistant from two points, through the midpoint of the
/// geodesic between them, ending on the polygon boundary.
struct BisectingCurve {
  Point x;
  Point y;
  std::vector<Point> points;  // from `from` to `to`
  BoundaryCoord from;
  BoundaryCoord to;
  bool from_on_boundary = true;  // false if tracing stopped in a flat region
  bool to_on_boundary = true;
};

BisectingCurve bisecting_curve(const PolygonDomain& dom, const Point& x, const Point& y);

struct LevelGradient {
  double g = 0.0;  // d(a, q) - d(b, q)
  Point grad;
};
/// Level value and its gradient at q, with q located in triangle t.
LevelGradient level_gradient(const Site& a, const Site& b, const Point& q, int t);

enum class LevelStep { Ok, Boundary, Flat };

/// One predictor-corrector step of length about h along d(a, .) = d(b, .)
/// starting at q (on the level set), roughly along `dir`. On Boundary, `next`
/// is the zero of the level value on the polygon boundary near the exit.
LevelStep level_step(const Site& a, const Site& b, const Point& q, const Point& dir, double h, Point* next);

/// Traces d(a, .) = d(b, .) from `start` along direction `dir` (roughly) with
/// step h until the boundary, a flat region, or `stop` within h. Returns the
/// traced points excluding `start`. `hit_boundary` reports the first case.
std::vector<Point> trace_level_set(const Site& a, const Site& b, const Point& start, Point dir, double h,
                                   const Point* stop, bool* hit_boundary);

}  // namespace geocenter
