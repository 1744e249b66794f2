#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <set>
#include <sstream>

#include "geocenter/polygon.hpp"
#include "geocenter/predicates.hpp"
#include "test_support.hpp"

using namespace geocenter;
using boost::multiprecision::cpp_rational;

namespace {

int rational_orientation(const Point& a, const Point& b, const Point& c) {
  const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const cpp_rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

int winding_number(const SimplePolygon& poly, const Point& p) {
  int wn = 0;
  for (int i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i);
    const Point b = poly.vertex(i + 1);
    const double side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else if (b.y <= p.y && side < 0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace

TEST_CASE("orientation basic turns") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 1}) == -1);
}

TEST_CASE("orientation matches rational arithmetic near degeneracy") {
  const Point b{12.0, 12.0};
  const Point c{24.0, 24.0};
  int disagreements = 0;
  int naive_wrong = 0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Point a{0.5 + i * std::ldexp(1.0, -53), 0.5 + j * std::ldexp(1.0, -53)};
      const int exact = rational_orientation(a, b, c);
      if (orientation(a, b, c) != exact) ++disagreements;
      const double naive = orient_value(a, b, c);
      if ((naive > 0) - (naive < 0) != exact) ++naive_wrong;
    }
  }
  CHECK(disagreements == 0);
  // The test is only meaningful if plain doubles get some of these wrong.
  CHECK(naive_wrong > 0);
}

TEST_CASE("validate_polygon normalizes and rejects") {
  const std::vector<Point> ccw{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const SimplePolygon sq = validate_polygon(ccw);
  CHECK(sq.size() == 4);
  std::set<std::pair<double, double>> a, b;
  for (const Point& p : ccw) a.insert({p.x, p.y});
  for (const Point& p : sq.vertices()) b.insert({p.x, p.y});
  CHECK(a == b);
  CHECK(orientation(sq.vertex(0), sq.vertex(1), sq.vertex(2)) < 0);

  const std::vector<Point> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  try {
    validate_polygon(bowtie);
    FAIL("bow-tie accepted");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::SelfIntersecting);
  }
  const std::vector<Point> repeated{{0, 0}, {0, 1}, {0, 1}, {1, 0}};
  CHECK_THROWS_AS(validate_polygon(repeated), GeometryError);
  try {
    validate_polygon(repeated);
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateEdge);
  }
  const std::vector<Point> two{{0, 0}, {1, 0}};
  try {
    validate_polygon(two);
    FAIL("two points accepted");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::TooFewVertices);
  }
  CHECK(fixtures::lshape().size() == 6);
}

TEST_CASE("reversed input yields the same ring up to rotation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SimplePolygon p = random_polygon(12, seed);
    std::vector<Point> rev(p.vertices().begin(), p.vertices().end());
    std::reverse(rev.begin(), rev.end());
    const SimplePolygon q = validate_polygon(rev);
    REQUIRE(q.size() == p.size());
    int offset = -1;
    for (int k = 0; k < q.size(); ++k) {
      if (q.vertex(k) == p.vertex(0)) offset = k;
    }
    REQUIRE(offset >= 0);
    for (int k = 0; k < p.size(); ++k) CHECK(q.vertex(offset + k) == p.vertex(k));
  }
}

TEST_CASE("point_in_polygon examples") {
  const SimplePolygon sq = fixtures::square();
  const SimplePolygon ls = fixtures::lshape();
  CHECK(point_in_polygon(sq, {0.5, 0.5}) == Containment::Inside);
  CHECK(point_in_polygon(sq, {0.0, 0.5}) == Containment::Boundary);
  CHECK(point_in_polygon(ls, {1.5, 1.5}) == Containment::Outside);
  CHECK(point_in_polygon(sq, {0.5, 1.0 + 5e-10}) == Containment::Boundary);
  CHECK(point_in_polygon(sq, {0.5, 1.0 + 5e-9}) == Containment::Outside);
}

TEST_CASE("point_in_polygon agrees with winding numbers") {
  std::vector<SimplePolygon> polys{fixtures::square(), fixtures::lshape(), random_polygon(20, 7),
                                   random_polygon(40, 8)};
  for (const SimplePolygon& poly : polys) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-0.25, 2.25);
    int mismatches = 0;
    for (int k = 0; k < 10000; ++k) {
      const Point p{u(rng), u(rng)};
      const Containment c = point_in_polygon(poly, p);
      if (c == Containment::Boundary) continue;
      const bool inside = winding_number(poly, p) != 0;
      if (inside != (c == Containment::Inside)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("chain walks clockwise") {
  const SimplePolygon sq = fixtures::square();
  const SimplePolygon ls = fixtures::lshape();
  CHECK(chain(sq, {0, 0.5}, {2, 0.5}).vertex_indices == std::vector<int>{1, 2});
  CHECK(chain(sq, {1, 0.25}, {1, 0.25}).vertex_indices.empty());
  CHECK(chain(ls, {0, 0.0}, {3, 0.0}).vertex_indices == std::vector<int>{0, 1, 2, 3});
  CHECK(chain(sq, {3, 0.5}, {0, 0.5}).vertex_indices == std::vector<int>{0});
  CHECK(chain(ls, {2, 1.0}, {4, 0.0}).vertex_indices == std::vector<int>{3, 4});
}

TEST_CASE("parse polygon text") {
  const SimplePolygon p = parse_polygon_string("# square, ccw\n4\n0 0\n1 0 # corner\n1 1\n0 1\n");
  CHECK(p.size() == 4);
  CHECK(orientation(p.vertex(0), p.vertex(1), p.vertex(2)) < 0);
  CHECK_THROWS_AS(parse_polygon_string("3\n0 0\n1 x\n0 1\n"), GeometryError);
  CHECK_THROWS_AS(parse_polygon_string("4\n0 0\n1 0\n"), GeometryError);
  CHECK_THROWS_AS(parse_polygon_string(""), GeometryError);
  const SimplePolygon round_trip = parse_polygon_string(format_polygon(fixtures::lshape()));
  for (int i = 0; i < 6; ++i) CHECK(round_trip.vertex(i) == fixtures::lshape().vertex(i));
}

TEST_CASE("random polygons are valid and seeded") {
  for (int n : {3, 8, 24, 40, 64}) {
    const SimplePolygon a = random_polygon(n, 5);
    const SimplePolygon b = random_polygon(n, 5);
    CHECK(a.size() == n);
    for (int i = 0; i < n; ++i) CHECK(a.vertex(i) == b.vertex(i));
  }
}
