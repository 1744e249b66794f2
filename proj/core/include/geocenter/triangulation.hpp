#pragma once

#include <array>
#include <vector>

#include "geocenter/polygon.hpp"

namespace geocenter {

/// Ear-clipping triangulation with its dual tree and a bucket grid for
/// point location. Triangles keep the polygon's clockwise orientation.
class Triangulation {
 public:
  explicit Triangulation(const SimplePolygon& poly);

  const SimplePolygon& polygon() const { return poly_; }
  int size() const { return static_cast<int>(triangles_.size()); }

  /// Vertex indices of triangle t, clockwise.
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  /// Triangle across edge k of t (edge k joins corner k and k+1), or -1 on ∂P.
  int neighbor(int t, int k) const { return neighbors_[t][k]; }
  /// Triangle bordering polygon edge e.
  int edge_triangle(int e) const { return edge_triangle_[e]; }

  Point corner(int t, int k) const { return poly_.vertex(triangles_[t][k]); }

  /// Triangle containing p (closed), or -1.
  int locate(const Point& p) const;
  /// As locate(), but points slightly outside snap to the nearest triangle.
  int locate_nearest(const Point& p) const;
  bool contains(int t, const Point& p) const;

  /// Dual-tree path of triangles from a to b inclusive.
  std::vector<int> dual_path(int a, int b) const;

  /// Third vertex of t opposite the shared diagonal with neighbor u.
  int shared_edge_index(int t, int u) const;

  /// Neighbors in the dual tree (adjacent triangles).
  int dual_parent(int t) const { return parent_[t]; }

 private:
  void build_grid();

  SimplePolygon poly_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> neighbors_;
  std::vector<int> edge_triangle_;
  std::vector<int> parent_;
  std::vector<int> depth_;

  int grid_w_ = 1;
  int grid_h_ = 1;
  Point grid_lo_;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  std::vector<std::vector<int>> grid_;
};

}  // namespace geocenter
