#pragma once

#include "geocenter/point.hpp"

namespace geocenter {

/// Sign of (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear.
/// Falls back to exact expansion arithmetic when the floating-point
/// estimate is too close to zero to trust.
int orientation(const Point& a, const Point& b, const Point& c);

/// Floating-point value of the same determinant (not exact).
inline double orient_value(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// True if p lies on the closed segment ab (exact).
bool on_segment(const Point& a, const Point& b, const Point& p);

/// True if closed segments ab and cd share at least one point (exact).
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

/// True if segments ab and cd cross at a single point interior to both (exact).
bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d);

}  // namespace geocenter
