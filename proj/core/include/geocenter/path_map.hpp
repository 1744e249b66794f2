#pragma once

#include <optional>
#include <span>
#include <vector>

#include "geocenter/triangulation.hpp"

namespace geocenter {

/// A vertex of a shortest path tree: a polygon vertex or the root point.
struct PathNode {
  Point p;
  int vertex = -1;  // polygon vertex index; -1 for the root
  double dist = 0.0;
  int parent = -1;  // node id of the predecessor; -1 for the root
};

/// Funnel on the entry diagonal of a triangle. chain.front() is the left end
/// and chain.back() the right end as seen from the apex; the triangle's third
/// vertex lies to the left of the directed diagonal front->back.
struct Funnel {
  std::vector<int> chain;
  int apex = 0;
};

/// Angular region of a funnel vertex: points q with
/// cross(left_dir, q - origin) <= 0 and cross(right_dir, q - origin) >= 0.
struct Wedge {
  Point origin;
  Point left_dir;
  Point right_dir;
  bool has_left = false;
  bool has_right = false;

  bool contains(const Point& q, double slack = 0.0) const;
};

/// Node storage shared by full maps and single-target funnel walks. Node id v
/// (v < n) is polygon vertex v, node id n is the root.
class FunnelPropagator {
 public:
  FunnelPropagator(const Triangulation& tri, const Point& root);

  const Triangulation& triangulation() const { return *tri_; }
  const Point& root() const { return root_; }
  int root_node() const { return static_cast<int>(nodes_.size()) - 1; }
  int root_triangle() const { return root_tri_; }
  const PathNode& node(int id) const { return nodes_[id]; }
  std::span<const PathNode> nodes() const { return nodes_; }

  /// Position in f.chain of the last anchor of the path from the root to q.
  /// q must lie in the triangle the funnel enters. Collinear cases adopt the
  /// farther vertex.
  int anchor_position(const Funnel& f, const Point& q) const;
  Wedge wedge(const Funnel& f, int pos) const;

  /// Funnel entering neighbor triangle `to` from the root triangle.
  Funnel initial_funnel(int to);
  /// Given the funnel entering `tri_index`, returns the funnel entering
  /// neighbor `to` and records the third vertex's node.
  Funnel advance(const Funnel& f, int tri_index, int to);

  /// Walks the dual path from the root triangle to `target` and returns the
  /// entry funnel there (a single-node funnel if the root lies in target).
  Funnel walk_to(int target);

 protected:
  int third_vertex(int t, const Funnel& f) const;
  void reach(int vertex, const Funnel& f, int pos);

  const Triangulation* tri_;
  Point root_;
  int root_tri_ = -1;
  std::vector<PathNode> nodes_;
};

/// Shortest path map rooted at a point: every triangle stores the funnel it is
/// entered through, so distance queries are a point location plus one wedge
/// search.
class ShortestPathMap : public FunnelPropagator {
 public:
  ShortestPathMap(const Triangulation& tri, const Point& root);

  struct Location {
    int triangle = -1;
    int node = -1;
  };

  const Funnel& funnel(int t) const { return funnels_[t]; }

  Location locate(const Point& q) const;
  Location locate_in(int t, const Point& q) const;
  double distance(const Point& q) const;
  double distance_in(int t, const Point& q) const;
  double vertex_distance(int v) const { return nodes_[v].dist; }

  /// Polygon vertices on the path from the root to node id, in root order.
  std::vector<int> vertices_to(int node_id) const;

  struct Cell {
    int triangle = -1;
    int apex = -1;  // node id
    std::vector<Point> region;
  };
  /// Triangles split by funnel wedges; cells with the same apex in adjacent
  /// triangles are not merged.
  std::vector<Cell> cells() const;

 private:
  std::vector<Funnel> funnels_;
};

/// Distance profile along polygon edge e from a point: consecutive parameter
/// intervals on e with the last anchor of the path fixed in each.
struct EdgeProfilePiece {
  double t0 = 0.0;
  double t1 = 1.0;
  Point anchor;
  double anchor_dist = 0.0;
  int anchor_vertex = -1;  // -1: the source itself
};

std::vector<EdgeProfilePiece> edge_profile(const Triangulation& tri, const Point& source, int edge);
/// Same, walking from an existing propagator rooted at the source.
std::vector<EdgeProfilePiece> edge_profile(FunnelPropagator& fp, int edge);

/// Distance from the source of a profile to the point at parameter t.
double profile_distance(const SimplePolygon& poly, int edge, std::span<const EdgeProfilePiece> profile,
                        double t);

}  // namespace geocenter
