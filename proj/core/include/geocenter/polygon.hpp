#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geocenter/errors.hpp"
#include "geocenter/point.hpp"

namespace geocenter {

/// Absolute tolerance used to classify points as lying on the boundary.
inline constexpr double kOnBoundaryTol = 1e-9;

/// A point on the boundary: fraction t along the directed edge v_i -> v_{i+1}.
struct BoundaryCoord {
  int edge = 0;
  double t = 0.0;

  bool operator==(const BoundaryCoord&) const = default;
};

enum class Containment { Inside, Boundary, Outside };

/// Simple polygon with vertices in clockwise order. Construct through
/// validate_polygon(); instances are immutable afterwards.
class SimplePolygon {
 public:
  SimplePolygon() = default;

  int size() const { return static_cast<int>(vertices_.size()); }
  std::span<const Point> vertices() const { return vertices_; }

  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  int next(int i) const { return wrap(i + 1); }
  int prev(int i) const { return wrap(i - 1); }
  const Point& vertex(int i) const { return vertices_[wrap(i)]; }

  double edge_length(int i) const { return dist(vertex(i), vertex(i + 1)); }
  double perimeter() const;
  double area() const;  // positive
  bool is_reflex(int i) const;

  Point point_at(const BoundaryCoord& c) const;
  BoundaryCoord canonical(BoundaryCoord c) const;
  BoundaryCoord vertex_coord(int i) const { return {wrap(i), 0.0}; }

  /// Scalar position along the boundary: edge + t, in [0, n).
  double position(const BoundaryCoord& c) const;

  /// Lower-left and upper-right corners of the bounding box.
  Point bbox_min() const { return lo_; }
  Point bbox_max() const { return hi_; }

 private:
  friend SimplePolygon validate_polygon(std::span<const Point> raw);
  explicit SimplePolygon(std::vector<Point> v);

  std::vector<Point> vertices_;
  Point lo_;
  Point hi_;
};

/// Checks simplicity and returns the clockwise polygon; counterclockwise
/// input is reversed (keeping the first vertex first).
SimplePolygon validate_polygon(std::span<const Point> raw);

Containment point_in_polygon(const SimplePolygon& poly, const Point& p,
                             double tol = kOnBoundaryTol);

/// Closest boundary coordinate to p (ties resolved by lowest edge index).
BoundaryCoord project_to_boundary(const SimplePolygon& poly, const Point& p);

/// Part of the boundary walked clockwise from `from` to `to`.
struct Chain {
  BoundaryCoord from;
  BoundaryCoord to;
  std::vector<int> vertex_indices;
};

Chain chain(const SimplePolygon& poly, const BoundaryCoord& from, const BoundaryCoord& to);

/// Vertex indices from a to b inclusive, clockwise.
std::vector<int> vertex_range(const SimplePolygon& poly, int a, int b);

/// Polygon text format: a count line then one "x y" line per vertex;
/// '#' starts a comment.
SimplePolygon parse_polygon(std::istream& in);
SimplePolygon parse_polygon_string(const std::string& text);
SimplePolygon load_polygon(const std::string& path);
std::string format_polygon(const SimplePolygon& poly);

namespace fixtures {
SimplePolygon square();
SimplePolygon lshape();
}  // namespace fixtures

/// Random simple polygon with n vertices in the unit square, built by
/// recursive space partitioning of random points.
SimplePolygon random_polygon(int n, std::uint64_t seed);

}  // namespace geocenter
