#pragma once

#include <memory>
#include <span>
#include <vector>

#include "geocenter/sites.hpp"

namespace geocenter {

struct VoronoiVertex {
  Point p;
  double dist = 0.0;       // common distance to the incident sites
  std::vector<int> sites;  // incident site indices, ascending
  bool on_boundary = false;
  BoundaryCoord coord;  // valid when on_boundary
};

struct VoronoiEdge {
  int from = -1;
  int to = -1;
  std::vector<int> sites;     // sites shared by both ends (at least two)
  std::vector<Point> points;  // polyline from `from` to `to`
};

struct RefinedCell {
  int site = -1;
  int anchor_node = -1;    // node id in the site's map
  int anchor_vertex = -1;  // polygon vertex, -1 for the site itself
  int triangle = -1;
  std::vector<Point> region;
};

/// Farthest-site geodesic Voronoi diagram of a set of sites, with every cell
/// split further by the shortest path map of its site.
class FarthestVoronoi {
 public:
  const std::vector<int>& site_vertices() const { return site_vertices_; }
  const std::vector<VoronoiVertex>& vertices() const { return vertices_; }
  const std::vector<VoronoiEdge>& edges() const { return edges_; }
  const std::vector<RefinedCell>& refined_cells() const { return cells_; }
  /// Boundary of each site's cell, clockwise; empty for sites without a cell.
  const std::vector<std::vector<Point>>& cells() const { return site_cells_; }

  /// Farthest site from q by direct evaluation (lowest index on ties).
  int site_at(const Point& q) const;
  /// Refined cell containing q, or -1.
  int cell_at(const Point& q) const;
  /// Distances stored at the diagram vertices.
  std::vector<double> vertex_distances() const;

 private:
  friend FarthestVoronoi farthest_voronoi(const SiteSet& sites);
  friend FarthestVoronoi farthest_voronoi(const PolygonDomain& dom, std::span<const int> vertices);

  const SiteSet* sites_ = nullptr;
  std::shared_ptr<const SiteSet> owned_;
  std::vector<int> site_vertices_;
  std::vector<VoronoiVertex> vertices_;
  std::vector<VoronoiEdge> edges_;
  std::vector<std::vector<Point>> site_cells_;
  std::vector<RefinedCell> cells_;
};

/// The site set must outlive the diagram.
FarthestVoronoi farthest_voronoi(const SiteSet& sites);
FarthestVoronoi farthest_voronoi(const PolygonDomain& dom, std::span<const int> vertices);

/// Even-odd point-in-ring test for arbitrary closed polylines.
bool ring_contains(std::span<const Point> ring, const Point& q);

}  // namespace geocenter
