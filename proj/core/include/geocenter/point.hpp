#pragma once

#include <cmath>

namespace geocenter {

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr Point operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Point& o) const = default;
};

constexpr Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }

constexpr double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }
constexpr double dist2(const Point& a, const Point& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}
constexpr Point lerp(const Point& a, const Point& b, double t) { return a + (b - a) * t; }
constexpr Point perp(const Point& a) { return {-a.y, a.x}; }

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace geocenter
