#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "geocenter/geodesic.hpp"
#include "geocenter/oracle.hpp"
#include "geocenter/subpolygon.hpp"
#include "test_support.hpp"

using namespace geocenter;
using geocenter::testing::interior_points;

TEST_CASE("triangulation sizes and dual tree") {
  std::vector<SimplePolygon> polys{fixtures::square(), fixtures::lshape()};
  for (int k = 0; k < 5; ++k) polys.push_back(random_polygon(40, 100 + k));
  for (const SimplePolygon& poly : polys) {
    const Triangulation tri = triangulate(poly);
    REQUIRE(tri.size() == poly.size() - 2);
    int diagonals = 0;
    double area = 0.0;
    for (int t = 0; t < tri.size(); ++t) {
      for (int k = 0; k < 3; ++k) diagonals += tri.neighbor(t, k) >= 0;
      area += std::fabs(cross(tri.corner(t, 1) - tri.corner(t, 0), tri.corner(t, 2) - tri.corner(t, 0))) / 2;
    }
    // A connected graph on n-2 nodes with n-3 edges is a tree.
    CHECK(diagonals == 2 * (poly.size() - 3));
    for (int t = 1; t < tri.size(); ++t) CHECK(tri.dual_path(0, t).front() == 0);
    CHECK(area == doctest::Approx(poly.area()).epsilon(1e-12));
  }
  CHECK(triangulate(fixtures::square()).size() == 2);
  CHECK(triangulate(fixtures::lshape()).size() == 4);
}

TEST_CASE("shortest_path examples") {
  const PolygonDomain sq(fixtures::square());
  const GeodesicPath a = shortest_path(sq, {0.1, 0.1}, {0.9, 0.9});
  CHECK(a.anchors.empty());
  CHECK(a.length == doctest::Approx(std::sqrt(1.28)).epsilon(1e-12));

  const PolygonDomain ls(fixtures::lshape());
  const GeodesicPath b = shortest_path(ls, {0.5, 1.75}, {1.75, 0.5});
  REQUIRE(b.anchors.size() == 1);
  CHECK(ls.polygon().vertex(b.anchors[0]) == Point{1, 1});
  CHECK(b.length == doctest::Approx(2 * std::sqrt(0.8125)).epsilon(1e-12));
  CHECK(geodesic_distance(ls, {0.5, 1.75}, {1.75, 0.5}) == doctest::Approx(1.8027756).epsilon(1e-7));
  CHECK_THROWS_AS(shortest_path(ls, {1.5, 1.5}, {0.5, 0.5}), GeometryError);
}

TEST_CASE("geodesic distance equals visibility graph distance") {
  for (int k = 0; k < 20; ++k) {
    const int n = 8 + (k * 32) / 19;
    const SimplePolygon poly = random_polygon(n, 1000 + k);
    const PolygonDomain dom(poly);
    const VisibilityGraph vg(poly);
    const auto pts = interior_points(poly, 20, 77 + k);
    for (int i = 0; i < 10; ++i) {
      const double d = geodesic_distance(dom, pts[2 * i], pts[2 * i + 1]);
      CHECK(std::fabs(d - vg.distance(pts[2 * i], pts[2 * i + 1])) <= 1e-9);
    }
    // Vertex-to-vertex and vertex-to-point paths exercise degenerate funnels.
    for (int v = 0; v < n; v += 3) {
      CHECK(std::fabs(geodesic_distance(dom, poly.vertex(v), pts[v % 20]) -
                      vg.distance(poly.vertex(v), pts[v % 20])) <= 1e-9);
      CHECK(std::fabs(dom.vertex_distance(v, (v + n / 2) % n) -
                      vg.distance(poly.vertex(v), poly.vertex((v + n / 2) % n))) <= 1e-9);
    }
  }
}

TEST_CASE("metric properties and anchor legality") {
  const SimplePolygon poly = random_polygon(30, 4242);
  const PolygonDomain dom(poly);
  const auto pts = interior_points(poly, 300, 5);
  for (int i = 0; i < 100; ++i) {
    const Point& x = pts[3 * i];
    const Point& y = pts[3 * i + 1];
    const Point& z = pts[3 * i + 2];
    const double dxy = geodesic_distance(dom, x, y);
    CHECK(dxy == doctest::Approx(geodesic_distance(dom, y, x)).epsilon(1e-12));
    CHECK(geodesic_distance(dom, x, x) == 0.0);
    CHECK(geodesic_distance(dom, x, z) <= dxy + geodesic_distance(dom, y, z) + 1e-9);
    const GeodesicPath p = shortest_path(dom, x, z);
    for (int a : p.anchors) CHECK(poly.is_reflex(a));
    double len = 0.0;
    const auto pp = p.points(poly);
    for (std::size_t k = 0; k + 1 < pp.size(); ++k) len += dist(pp[k], pp[k + 1]);
    CHECK(len == doctest::Approx(p.length).epsilon(1e-12));
  }
}

TEST_CASE("shortest path tree") {
  const PolygonDomain sq(fixtures::square());
  const ShortestPathTree t = shortest_path_tree(sq, {0.5, 0.5});
  for (int v = 0; v < 4; ++v) {
    CHECK(t.parent[v] == -1);
    CHECK(t.dist[v] == doctest::Approx(std::sqrt(0.5)));
  }
  const PolygonDomain ls(fixtures::lshape());
  const ShortestPathTree u = shortest_path_tree(ls, {1.75, 0.25});
  CHECK(ls.polygon().vertex(u.parent[1]) == Point{1, 1});
  for (int v = 0; v < 6; ++v) {
    CHECK(u.dist[v] == doctest::Approx(geodesic_distance(ls, {1.75, 0.25}, ls.polygon().vertex(v))).epsilon(1e-12));
  }
}

TEST_CASE("shortest path map apexes") {
  const PolygonDomain sq(fixtures::square());
  const ShortestPathMap m = shortest_path_map(sq, {0.5, 0.5});
  for (const auto& cell : m.cells()) CHECK(cell.apex == m.root_node());

  const PolygonDomain ls(fixtures::lshape());
  const ShortestPathMap ml = shortest_path_map(ls, {1.75, 0.25});
  CHECK(ml.node(ml.locate({0.25, 1.75}).node).p == Point{1, 1});

  const SimplePolygon poly = random_polygon(32, 31337);
  const PolygonDomain dom(poly);
  const Point root = interior_points(poly, 1, 3)[0];
  const ShortestPathMap map = shortest_path_map(dom, root);
  double cell_area = 0.0;
  for (const auto& cell : map.cells()) {
    for (std::size_t i = 0; i < cell.region.size(); ++i) {
      cell_area += cross(cell.region[i], cell.region[(i + 1) % cell.region.size()]) / 2;
    }
  }
  CHECK(std::fabs(cell_area) == doctest::Approx(poly.area()).epsilon(1e-9));
  for (const Point& q : interior_points(poly, 1000, 11)) {
    const GeodesicPath p = shortest_path(dom, root, q);
    const PathNode& apex = map.node(map.locate(q).node);
    if (p.anchors.empty()) {
      CHECK(apex.vertex == -1);
    } else {
      CHECK(apex.vertex == p.anchors.back());
    }
    CHECK(map.distance(q) == doctest::Approx(p.length).epsilon(1e-12));
  }
}

TEST_CASE("path convexity") {
  const PolygonDomain sq(fixtures::square());
  const auto sp = interior_points(sq.polygon(), 30, 8);
  for (int i = 0; i < 10; ++i) CHECK(path_convexity_check(sq, sp[3 * i], sp[3 * i + 1], sp[3 * i + 2], 32));
  const PolygonDomain ls(fixtures::lshape());
  CHECK(path_convexity_check(ls, {0.25, 1.75}, {1.75, 0.25}, {0.25, 0.25}, 64));
  const SimplePolygon poly = random_polygon(24, 2024);
  const PolygonDomain dom(poly);
  const auto pts = interior_points(poly, 60, 9);
  for (int i = 0; i < 20; ++i) CHECK(path_convexity_check(dom, pts[3 * i], pts[3 * i + 1], pts[3 * i + 2], 64));
}

TEST_CASE("subpolygon rings") {
  const PolygonDomain sq(fixtures::square());
  const SubPolygon half = subpolygon(sq, {0, 0.5}, {2, 0.5});
  CHECK(half.closing_path.anchors.empty());
  CHECK(half.ring.size() == 4);
  CHECK(half.ring.front() == Point{0, 0.5});
  CHECK(half.ring[1] == Point{0, 1});

  const PolygonDomain ls(fixtures::lshape());
  const SubPolygon arm = subpolygon(ls, {1, 0.0}, {5, 0.0});
  REQUIRE(arm.closing_path.anchors.size() == 1);
  CHECK(ls.polygon().vertex(arm.closing_path.anchors[0]) == Point{1, 1});
  CHECK(arm.ring.size() == 6);

  const SubPolygon sliver = subpolygon(sq, {1, 0.25}, {1, 0.75});
  CHECK(sliver.chain.vertex_indices.empty());
  CHECK(sliver.ring.size() == 2);
  CHECK_THROWS_AS(subpolygon(sq, {1, 0.5}, {1, 0.5}), GeometryError);

  // Both sides of a split together list every vertex once, apart from
  // endpoints and shared anchors.
  const SimplePolygon poly = random_polygon(20, 55);
  const PolygonDomain dom(poly);
  const BoundaryCoord u{3, 0.4}, w{14, 0.6};
  const SubPolygon s1 = subpolygon(dom, u, w);
  const SubPolygon s2 = subpolygon(dom, w, u);
  std::multiset<int> seen(s1.chain.vertex_indices.begin(), s1.chain.vertex_indices.end());
  seen.insert(s2.chain.vertex_indices.begin(), s2.chain.vertex_indices.end());
  for (int v = 0; v < poly.size(); ++v) CHECK(seen.count(v) == 1);
}
