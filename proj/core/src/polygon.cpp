#include "geocenter/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "geocenter/predicates.hpp"

namespace geocenter {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::DegenerateEdge: return "DegenerateEdge";
    case ErrorKind::SelfIntersecting: return "SelfIntersecting";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::NegativeRadius: return "NegativeRadius";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegeneratePartition: return "DegeneratePartition";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
  }
  return "Unknown";
}

SimplePolygon::SimplePolygon(std::vector<Point> v) : vertices_(std::move(v)) {
  lo_ = hi_ = vertices_.front();
  for (const Point& p : vertices_) {
    lo_.x = std::min(lo_.x, p.x);
    lo_.y = std::min(lo_.y, p.y);
    hi_.x = std::max(hi_.x, p.x);
    hi_.y = std::max(hi_.y, p.y);
  }
}

double SimplePolygon::perimeter() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += edge_length(i);
  return s;
}

double SimplePolygon::area() const {
  double a = 0.0;
  for (int i = 0; i < size(); ++i) a += cross(vertex(i), vertex(i + 1));
  return std::fabs(a) * 0.5;
}

bool SimplePolygon::is_reflex(int i) const {
  return orientation(vertex(i - 1), vertex(i), vertex(i + 1)) > 0;
}

BoundaryCoord SimplePolygon::canonical(BoundaryCoord c) const {
  c.edge = wrap(c.edge);
  if (c.t >= 1.0) {
    c.edge = next(c.edge);
    c.t = 0.0;
  } else if (c.t < 0.0) {
    c.t = 0.0;
  }
  return c;
}

Point SimplePolygon::point_at(const BoundaryCoord& c) const {
  const int e = wrap(c.edge);
  if (c.t <= 0.0) return vertex(e);
  if (c.t >= 1.0) return vertex(e + 1);
  return lerp(vertex(e), vertex(e + 1), c.t);
}

double SimplePolygon::position(const BoundaryCoord& c) const {
  const BoundaryCoord k = canonical(c);
  return static_cast<double>(k.edge) + k.t;
}

namespace {

int polygon_orientation(const std::vector<Point>& v) {
  // The lexicographically smallest vertex is convex, so its turn gives the
  // orientation exactly.
  const int n = static_cast<int>(v.size());
  int m = 0;
  for (int i = 1; i < n; ++i) {
    if (v[i].x < v[m].x || (v[i].x == v[m].x && v[i].y < v[m].y)) m = i;
  }
  return orientation(v[(m + n - 1) % n], v[m], v[(m + 1) % n]);
}

}  // namespace

SimplePolygon validate_polygon(std::span<const Point> raw) {
  const int n = static_cast<int>(raw.size());
  if (n < 3) throw GeometryError(ErrorKind::TooFewVertices, "polygon needs at least 3 vertices");
  for (const Point& p : raw) {
    if (!is_finite(p)) throw GeometryError(ErrorKind::Parse, "non-finite coordinate");
  }
  for (int i = 0; i < n; ++i) {
    if (raw[i] == raw[(i + 1) % n]) {
      throw GeometryError(ErrorKind::DegenerateEdge,
                          "repeated consecutive vertex at index " + std::to_string(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Point& a = raw[i];
    const Point& b = raw[(i + 1) % n];
    // Adjacent edge folding back over this one.
    const Point& c = raw[(i + 2) % n];
    if (orientation(a, b, c) == 0 && dot(b - a, c - b) < 0.0) {
      throw GeometryError(ErrorKind::SelfIntersecting,
                          "edges " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                              " overlap");
    }
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, raw[j], raw[(j + 1) % n])) {
        throw GeometryError(ErrorKind::SelfIntersecting,
                            "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  std::vector<Point> v(raw.begin(), raw.end());
  const int o = polygon_orientation(v);
  if (o == 0) throw GeometryError(ErrorKind::ZeroArea, "polygon has zero area");
  if (o > 0) std::reverse(v.begin() + 1, v.end());
  return SimplePolygon(std::move(v));
}

namespace {

double segment_distance(const Point& a, const Point& b, const Point& p) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

}  // namespace

Containment point_in_polygon(const SimplePolygon& poly, const Point& p, double tol) {
  const int n = poly.size();
  bool inside = false;
  for (int i = 0; i < n; ++i) {
    const Point& a = poly.vertex(i);
    const Point& b = poly.vertex(i + 1);
    if (segment_distance(a, b, p) <= tol) return Containment::Boundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      // Exact side test: crossing is to the right of p.
      const int o = orientation(a, b, p);
      if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
    }
  }
  return inside ? Containment::Inside : Containment::Outside;
}

BoundaryCoord project_to_boundary(const SimplePolygon& poly, const Point& p) {
  BoundaryCoord best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i);
    const Point ab = poly.vertex(i + 1) - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    const double d = dist(p, a + ab * t);
    if (d < best_d) {
      best_d = d;
      best = {i, t};
    }
  }
  return poly.canonical(best);
}

Chain chain(const SimplePolygon& poly, const BoundaryCoord& from, const BoundaryCoord& to) {
  Chain c{poly.canonical(from), poly.canonical(to), {}};
  const int n = poly.size();
  const double pu = poly.position(c.from);
  double pw = poly.position(c.to);
  if (pu == pw) return c;
  if (pw < pu) pw += n;
  int k = static_cast<int>(std::ceil(pu));
  for (; k <= pw; ++k) c.vertex_indices.push_back(k % n);
  return c;
}

std::vector<int> vertex_range(const SimplePolygon& poly, int a, int b) {
  std::vector<int> out;
  int k = poly.wrap(a);
  const int last = poly.wrap(b);
  out.push_back(k);
  while (k != last) {
    k = poly.next(k);
    out.push_back(k);
  }
  return out;
}

SimplePolygon parse_polygon(std::istream& in) {
  std::vector<double> numbers;
  std::string line;
  long long expected = -1;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (expected < 0) {
        std::size_t used = 0;
        try {
          expected = std::stoll(tok, &used);
        } catch (const std::exception&) {
          throw GeometryError(ErrorKind::Parse, "expected vertex count, got '" + tok + "'");
        }
        if (used != tok.size() || expected < 0) {
          throw GeometryError(ErrorKind::Parse, "bad vertex count '" + tok + "'");
        }
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw GeometryError(ErrorKind::Parse, "bad coordinate '" + tok + "'");
      }
      if (used != tok.size()) throw GeometryError(ErrorKind::Parse, "bad coordinate '" + tok + "'");
      numbers.push_back(v);
    }
  }
  if (expected < 0) throw GeometryError(ErrorKind::Parse, "empty polygon file");
  if (numbers.size() != static_cast<std::size_t>(2 * expected)) {
    throw GeometryError(ErrorKind::Parse, "expected " + std::to_string(expected) +
                                              " vertices, found " +
                                              std::to_string(numbers.size() / 2) + " coordinates pairs");
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(expected));
  for (long long i = 0; i < expected; ++i) pts.push_back({numbers[2 * i], numbers[2 * i + 1]});
  return validate_polygon(pts);
}

SimplePolygon parse_polygon_string(const std::string& text) {
  std::istringstream in(text);
  return parse_polygon(in);
}

SimplePolygon load_polygon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_polygon(in);
}

std::string format_polygon(const SimplePolygon& poly) {
  std::ostringstream out;
  out.precision(17);
  out << poly.size() << '\n';
  for (const Point& p : poly.vertices()) out << p.x << ' ' << p.y << '\n';
  return out.str();
}

namespace fixtures {

SimplePolygon square() {
  const std::vector<Point> v{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  return validate_polygon(v);
}

SimplePolygon lshape() {
  const std::vector<Point> v{{0, 0}, {0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}};
  return validate_polygon(v);
}

}  // namespace fixtures

namespace {

class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// Builds a chain from `first` to `last` through every point of `pts`, all of
// which lie on one side of the line first-last.
void partition_chain(const std::vector<Point>& pts, const Point& first, const Point& last,
                     UnitRng& rng, std::vector<Point>& out) {
  if (pts.empty()) return;
  const std::size_t pick = std::min(pts.size() - 1, static_cast<std::size_t>(rng.uniform() * pts.size()));
  const Point pivot = pts[pick];
  const Point mid = lerp(first, last, 0.25 + 0.5 * rng.uniform());
  std::vector<Point> near_first;
  std::vector<Point> near_last;
  const int side_first = orientation(pivot, mid, first);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k == pick) continue;
    if (orientation(pivot, mid, pts[k]) == side_first) {
      near_first.push_back(pts[k]);
    } else {
      near_last.push_back(pts[k]);
    }
  }
  partition_chain(near_first, first, pivot, rng, out);
  out.push_back(pivot);
  partition_chain(near_last, pivot, last, rng, out);
}

}  // namespace

SimplePolygon random_polygon(int n, std::uint64_t seed) {
  if (n < 3) throw GeometryError(ErrorKind::TooFewVertices, "random polygon needs n >= 3");
  for (std::uint64_t attempt = 0;; ++attempt) {
    UnitRng rng(seed * 0x9E3779B97F4A7C15ULL + attempt);
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (Point& p : pts) p = {rng.uniform(), rng.uniform()};
    const Point a = pts[0];
    const Point b = pts[1];
    std::vector<Point> left;
    std::vector<Point> right;
    for (int k = 2; k < n; ++k) {
      (orientation(a, b, pts[k]) > 0 ? left : right).push_back(pts[k]);
    }
    std::vector<Point> ring{a};
    partition_chain(right, a, b, rng, ring);
    ring.push_back(b);
    partition_chain(left, b, a, rng, ring);
    try {
      SimplePolygon poly = validate_polygon(ring);
      // Reject slivers that make tolerances meaningless.
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        const Point u = poly.vertex(i) - poly.vertex(i - 1);
        const Point w = poly.vertex(i + 1) - poly.vertex(i);
        const double s = std::fabs(cross(u, w)) / (norm(u) * norm(w));
        if (norm(w) < 1e-3 || s < 1e-3) ok = false;
      }
      for (int i = 0; i < n && ok; ++i) {
        for (int j = 0; j < n && ok; ++j) {
          if (j == i || j == poly.next(i) || poly.next(j) == i) continue;
          const Point a0 = poly.vertex(j);
          const Point ab = poly.vertex(j + 1) - a0;
          const double t = std::clamp(dot(poly.vertex(i) - a0, ab) / dot(ab, ab), 0.0, 1.0);
          if (dist(poly.vertex(i), a0 + ab * t) < 1e-3) ok = false;
        }
      }
      if (ok) return poly;
    } catch (const GeometryError&) {
    }
  }
}

}  // namespace geocenter
