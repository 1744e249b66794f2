#pragma once

#include <span>
#include <vector>

#include "geocenter/sites.hpp"

namespace geocenter {

/// One piece of the boundary of an intersection of geodesic disks: either a
/// circular arc around the last anchor of a site, traversed clockwise, or a
/// straight part of a polygon edge.
struct ArcPiece {
  bool circular = true;
  int site = -1;         // index in the site list (circular pieces)
  int anchor_node = -1;  // node id in that site's map
  Point center;          // anchor position
  double arc_radius = 0.0;
  double angle_start = 0.0;  // clockwise: angle_end <= angle_start
  double angle_end = 0.0;
  int edge = -1;  // polygon edge (straight pieces)
  double t0 = 0.0;
  double t1 = 0.0;
  int triangle = -1;
  Point start;
  Point end;

  Point point_at(double frac) const;
  double length() const;
};

/// Intersection of the radius-r geodesic disks around a set of sites.
struct DiskIntersection {
  double radius = 0.0;
  bool empty = false;
  bool single_point = false;
  bool full = false;  // the whole polygon
  Point point;        // a point of the set (the single point when single_point)
  std::vector<ArcPiece> pieces;  // per triangle, clockwise from an arbitrary start
  std::vector<ArcPiece> arcs;    // pieces merged by (site, anchor) or by edge

  bool has_boundary() const { return !empty && !single_point && !full; }
  int circular_arc_count() const;
  /// Pieces split further where wedge rays of the given maps cross them.
  std::vector<ArcPiece> refined(std::span<const ShortestPathMap* const> maps) const;
  /// Even-odd test against the traced boundary.
  bool contains(const Point& q) const;
};

/// Traces the boundary of the intersection starting from an interior point
/// `inner` whose farthest-site distance is below r.
DiskIntersection trace_intersection(const SiteSet& sites, double r, const Point& inner);

/// Intersection of the disks around the given sites; handles the empty,
/// single-point and whole-polygon cases.
DiskIntersection disks_intersection(const SiteSet& sites, double r);
DiskIntersection disks_intersection(const PolygonDomain& dom, std::span<const int> vertices, double r);

struct GeodesicDisk {
  Point center;
  double radius = 0.0;
  DiskIntersection region;

  bool contains(const Point& q) const { return region.full || region.contains(q); }
};

GeodesicDisk geodesic_disk(const PolygonDomain& dom, const Point& center, double r);

}  // namespace geocenter
