#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "geocenter/geodesic.hpp"

namespace geocenter {

/// A point whose geodesic distance field is available through a shortest
/// path map rooted at it.
struct Site {
  Point p;
  const ShortestPathMap* map = nullptr;
  int vertex = -1;  // polygon vertex index, or -1 for a free point
};

/// Ordered list of sites. Vertex sites borrow the domain's maps; point sites
/// own theirs.
class SiteSet {
 public:
  explicit SiteSet(const PolygonDomain& dom) : dom_(&dom) {}
  SiteSet(SiteSet&&) = default;
  SiteSet& operator=(SiteSet&&) = default;

  void add_vertex(int v);
  void add_point(const Point& p);
  /// Adds a boundary coordinate as a vertex site when it sits on a vertex.
  void add_boundary(const BoundaryCoord& c);

  const PolygonDomain& domain() const { return *dom_; }
  std::span<const Site> sites() const { return sites_; }
  const Site& operator[](int i) const { return sites_[i]; }
  int size() const { return static_cast<int>(sites_.size()); }
  std::vector<const ShortestPathMap*> maps() const;

  /// Largest site distance from q and its site (lowest index on ties).
  double max_distance(const Point& q, int* arg = nullptr) const;
  double distance(int i, const Point& q) const { return sites_[i].map->distance(q); }

 private:
  const PolygonDomain* dom_;
  std::vector<Site> sites_;
  std::vector<std::unique_ptr<ShortestPathMap>> owned_;
};

/// Point on the geodesic from site a to site b at the given arc length.
Point point_along(const Site& a, const Site& b, double s);
double site_distance(const Site& a, const Site& b);

/// A point with equal geodesic distance to three sites, found by solving the
/// circle system for fixed last anchors and re-locating anchors until they
/// settle. Empty if no consistent solution exists near `start`.
struct Equidistant {
  Point q;
  double rho = 0.0;
};
std::optional<Equidistant> equidistant_point(const Triangulation& tri, const Site& a, const Site& b,
                                             const Site& c, const Point& start);

/// Smallest geodesic ball containing all sites (Welzl-style recursion with
/// geodesic midpoints and three-site equidistant points as bases).
struct EnclosingBall {
  Point center;
  double radius = 0.0;
  std::vector<int> support;  // indices of sites at distance radius
};
EnclosingBall min_enclosing_ball(const SiteSet& sites);

}  // namespace geocenter
