#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "geocenter/bisector.hpp"
#include "geocenter/disks.hpp"
#include "geocenter/voronoi.hpp"
#include "test_support.hpp"

using namespace geocenter;
using geocenter::testing::interior_points;

namespace {

std::vector<int> all_vertices(const PolygonDomain& dom) {
  std::vector<int> v(dom.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Number of maximal cyclic runs per site in the circular arcs.
std::map<int, int> site_runs(const DiskIntersection& region) {
  std::vector<int> seq;
  for (const ArcPiece& a : region.arcs) {
    if (a.circular) seq.push_back(a.site);
  }
  std::map<int, int> runs;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const int prev = seq[(k + seq.size() - 1) % seq.size()];
    if (seq.size() == 1 || prev != seq[k]) ++runs[seq[k]];
  }
  return runs;
}

double ring_area(const std::vector<Point>& ring) {
  double a = 0.0;
  for (std::size_t k = 0; k < ring.size(); ++k) a += cross(ring[k], ring[(k + 1) % ring.size()]);
  return std::abs(a) / 2;
}

}  // namespace

TEST_CASE("geodesic disk examples") {
  const PolygonDomain sq(fixtures::square());
  const GeodesicDisk inner = geodesic_disk(sq, {0.5, 0.5}, 0.4);
  CHECK(inner.region.circular_arc_count() == 1);
  CHECK(inner.contains({0.5, 0.85}));
  CHECK_FALSE(inner.contains({0.5, 0.95}));

  const GeodesicDisk corners = geodesic_disk(sq, {0.5, 0.5}, std::sqrt(0.5));
  CHECK(corners.contains({0.01, 0.01}));
  CHECK(corners.contains({0.99, 0.5}));

  const PolygonDomain ls(fixtures::lshape());
  const double r = 1.2;
  const GeodesicDisk bent = geodesic_disk(ls, {1.75, 0.25}, r);
  const double around = r - dist({1.75, 0.25}, {1, 1});
  bool found = false;
  for (const ArcPiece& a : bent.region.arcs) {
    if (a.circular && dist(a.center, {1, 1}) < 1e-12) {
      found = true;
      CHECK(a.arc_radius == doctest::Approx(around).epsilon(1e-12));
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(geodesic_disk(ls, {1.5, 1.5}, 0.3), GeometryError);
  CHECK_THROWS_AS(geodesic_disk(ls, {0.5, 0.5}, -1.0), GeometryError);
}

TEST_CASE("disk membership matches geodesic distance") {
  for (int seed = 1; seed <= 10; ++seed) {
    const PolygonDomain dom(random_polygon(8 + 2 * seed, seed));
    const auto pts = interior_points(dom.polygon(), 301, 40 + seed);
    const Point c = pts[0];
    const double r = 0.3;
    const GeodesicDisk disk = geodesic_disk(dom, c, r);
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const double d = geodesic_distance(dom, c, pts[k]);
      if (std::abs(d - r) < 1e-9) continue;
      CHECK(disk.contains(pts[k]) == (d <= r));
    }
  }
}

TEST_CASE("disks_intersection examples") {
  const PolygonDomain sq(fixtures::square());
  const std::vector<int> all = all_vertices(sq);
  const DiskIntersection point = disks_intersection(sq, all, std::sqrt(0.5));
  REQUIRE(point.single_point);
  CHECK(dist(point.point, {0.5, 0.5}) < 1e-9);

  const DiskIntersection lens = disks_intersection(sq, all, 0.8);
  CHECK(lens.has_boundary());
  CHECK(lens.circular_arc_count() == 4);
  CHECK(lens.contains({0.5, 0.5}));
  CHECK_FALSE(lens.contains({0.02, 0.5}));

  CHECK(disks_intersection(sq, all, 2.0).full);
  CHECK(disks_intersection(sq, all, 0.5).empty);
}

TEST_CASE("intersection membership, arc bound and per-site runs") {
  for (int seed = 1; seed <= 15; ++seed) {
    const int n = 8 + (seed * 5) % 25;
    const PolygonDomain dom(random_polygon(n, 300 + seed));
    std::vector<int> sites;
    for (int v = seed % 3; v < n; v += 2) sites.push_back(v);
    SiteSet set(dom);
    for (int v : sites) set.add_vertex(v);
    const double base = min_enclosing_ball(set).radius;
    for (double scale : {1.02, 1.2, 1.6}) {
      const double r = base * scale;
      const DiskIntersection region = disks_intersection(dom, sites, r);
      REQUIRE_FALSE(region.empty);
      if (!region.has_boundary()) continue;
      CHECK(region.circular_arc_count() <= 4 * (n + static_cast<int>(sites.size())));
      for (const auto& [site, runs] : site_runs(region)) CHECK(runs == 1);
      for (const Point& q : interior_points(dom.polygon(), 150, seed)) {
        const double d = set.max_distance(q);
        if (std::abs(d - r) < 1e-9) continue;
        CHECK(region.contains(q) == (d <= r));
      }
    }
  }
}

TEST_CASE("intersections grow with the radius") {
  for (int seed = 1; seed <= 8; ++seed) {
    const PolygonDomain dom(random_polygon(14 + seed, 500 + seed));
    const std::vector<int> all = all_vertices(dom);
    SiteSet set(dom);
    for (int v : all) set.add_vertex(v);
    const double base = min_enclosing_ball(set).radius;
    const DiskIntersection small = disks_intersection(dom, all, base * 1.05);
    const DiskIntersection large = disks_intersection(dom, all, base * 1.15);
    REQUIRE(small.has_boundary());
    // Arc midpoints stay off the polygon boundary, where even-odd tests are
    // ambiguous.
    for (const ArcPiece& a : small.arcs) {
      if (a.circular) CHECK((large.full || large.contains(a.point_at(0.5))));
    }
  }
}

TEST_CASE("farthest voronoi examples") {
  const PolygonDomain sq(fixtures::square());
  const FarthestVoronoi square = farthest_voronoi(sq, all_vertices(sq));
  int nonempty = 0;
  for (const auto& cell : square.cells()) nonempty += !cell.empty();
  CHECK(nonempty == 4);
  bool center = false;
  for (const VoronoiVertex& v : square.vertices()) {
    if (dist(v.p, {0.5, 0.5}) < 1e-9) {
      center = true;
      CHECK(v.sites.size() == 4);
    }
  }
  CHECK(center);

  const PolygonDomain ls(fixtures::lshape());
  const FarthestVoronoi lshape = farthest_voronoi(ls, all_vertices(ls));
  bool root_two = false;
  for (double d : lshape.vertex_distances()) root_two |= std::abs(d - std::sqrt(2.0)) < 1e-9;
  CHECK(root_two);
}

TEST_CASE("farthest voronoi cells agree with brute force") {
  for (int seed = 1; seed <= 12; ++seed) {
    const PolygonDomain dom(random_polygon(8 + 2 * seed, 700 + seed));
    const std::vector<int> all = all_vertices(dom);
    const FarthestVoronoi fvd = farthest_voronoi(dom, all);
    SiteSet set(dom);
    for (int v : all) set.add_vertex(v);
    double area = 0.0;
    for (const RefinedCell& c : fvd.refined_cells()) area += ring_area(c.region);
    CHECK(area == doctest::Approx(dom.polygon().area()).epsilon(1e-6));
    for (const Point& q : interior_points(dom.polygon(), 100, seed)) {
      // Skip probes near a cell boundary.
      std::vector<double> d;
      for (int s = 0; s < set.size(); ++s) d.push_back(set.distance(s, q));
      std::sort(d.rbegin(), d.rend());
      if (d[0] - d[1] < 1e-6) continue;
      const int cell = fvd.cell_at(q);
      REQUIRE(cell >= 0);
      int brute = 0;
      set.max_distance(q, &brute);
      CHECK(fvd.refined_cells()[cell].site == brute);
    }
  }
}

TEST_CASE("bisecting curves") {
  const PolygonDomain sq(fixtures::square());
  const BisectingCurve line = bisecting_curve(sq, {0.25, 0.5}, {0.75, 0.5});
  for (const Point& p : line.points) CHECK(std::abs(p.x - 0.5) < 1e-9);
  CHECK(line.from_on_boundary);
  CHECK(line.to_on_boundary);
  CHECK_THROWS_AS(bisecting_curve(sq, {0.3, 0.3}, {0.3, 0.3}), GeometryError);

  const PolygonDomain ls(fixtures::lshape());
  const Point x{0.5, 1.5}, y{1.5, 0.5};
  const BisectingCurve bent = bisecting_curve(ls, x, y);
  CHECK(bent.from_on_boundary);
  CHECK(bent.to_on_boundary);
  const GeodesicPath path = shortest_path(ls, x, y);
  double closest = 1e9;
  for (const Point& p : bent.points) closest = std::min(closest, dist(p, {1, 1}));
  CHECK(path.length / 2 == doctest::Approx(geodesic_distance(ls, x, {1, 1})).epsilon(1e-12));
  CHECK(closest < 1e-6);  // the geodesic midpoint is the reflex corner

  for (int seed = 1; seed <= 10; ++seed) {
    const PolygonDomain dom(random_polygon(10 + seed, 900 + seed));
    const auto pts = interior_points(dom.polygon(), 2, seed);
    const BisectingCurve c = bisecting_curve(dom, pts[0], pts[1]);
    for (const Point& p : c.points) {
      CHECK(std::abs(geodesic_distance(dom, p, pts[0]) - geodesic_distance(dom, p, pts[1])) <= 1e-7);
    }
  }
}
