#include "geocenter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "geocenter/onecenter.hpp"
#include "geocenter/predicates.hpp"

namespace geocenter {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

VisibilityGraph::VisibilityGraph(const SimplePolygon& poly) : poly_(poly) {
  const int n = poly.size();
  weight_.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), kInf));
  for (int i = 0; i < n; ++i) {
    weight_[i][i] = 0.0;
    for (int j = i + 1; j < n; ++j) {
      if (visible(poly.vertex(i), poly.vertex(j))) {
        weight_[i][j] = weight_[j][i] = dist(poly.vertex(i), poly.vertex(j));
      }
    }
  }
}

bool VisibilityGraph::visible(const Point& a, const Point& b) const {
  const int n = poly_.size();
  std::vector<double> stops{0.0, 1.0};
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  for (int i = 0; i < n; ++i) {
    const Point& c = poly_.vertex(i);
    const Point& d = poly_.vertex(i + 1);
    if (segments_cross_properly(a, b, c, d)) return false;
    if (len2 > 0.0 && on_segment(a, b, c)) stops.push_back(dot(c - a, ab) / len2);
  }
  std::sort(stops.begin(), stops.end());
  for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
    if (stops[k + 1] - stops[k] <= 0.0) continue;
    const Point mid = lerp(a, b, 0.5 * (stops[k] + stops[k + 1]));
    if (point_in_polygon(poly_, mid) == Containment::Outside) return false;
  }
  return true;
}

double VisibilityGraph::distance(const Point& x, const Point& y) const {
  if (visible(x, y)) return dist(x, y);
  const int n = poly_.size();
  // Nodes 0..n-1 are vertices, n is x, n+1 is y.
  std::vector<double> to_x(static_cast<std::size_t>(n), kInf);
  std::vector<double> to_y(static_cast<std::size_t>(n), kInf);
  for (int v = 0; v < n; ++v) {
    if (visible(x, poly_.vertex(v))) to_x[v] = dist(x, poly_.vertex(v));
    if (visible(y, poly_.vertex(v))) to_y[v] = dist(y, poly_.vertex(v));
  }
  std::vector<double> best(static_cast<std::size_t>(n), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int v = 0; v < n; ++v) {
    if (to_x[v] < kInf) {
      best[v] = to_x[v];
      heap.emplace(best[v], v);
    }
  }
  double answer = kInf;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > best[v] || d >= answer) continue;
    answer = std::min(answer, d + to_y[v]);
    for (int u = 0; u < n; ++u) {
      const double w = weight_[v][u];
      if (w == kInf || u == v) continue;
      if (d + w < best[u]) {
        best[u] = d + w;
        heap.emplace(best[u], u);
      }
    }
  }
  return answer;
}

double visgraph_distance(const SimplePolygon& poly, const Point& x, const Point& y) {
  for (const Point& p : {x, y}) {
    if (point_in_polygon(poly, p) == Containment::Outside) {
      throw GeometryError(ErrorKind::PointOutside, "query point outside polygon");
    }
  }
  return VisibilityGraph(poly).distance(x, y);
}

namespace {

// Max vertex distance, with points off the polygon charged by their
// distance to the boundary so the refinement stays inside.
class VertexFarthest {
 public:
  explicit VertexFarthest(const PolygonDomain& dom) : dom_(dom) {}

  double inside(const Point& q) const {
    const int t = dom_.triangulation().locate_nearest(q);
    double best = 0.0;
    for (int v = 0; v < dom_.size(); ++v) best = std::max(best, dom_.vertex_map(v).distance_in(t, q));
    return best;
  }

  double operator()(const Point& q) const {
    if (point_in_polygon(dom_.polygon(), q) != Containment::Outside) return inside(q);
    const Point p = dom_.polygon().point_at(project_to_boundary(dom_.polygon(), q));
    return inside(p) + 10.0 * dist(p, q);
  }

 private:
  const PolygonDomain& dom_;
};

template <class F>
double golden(F&& f, double lo, double hi, int iters, double* arg_min) {
  constexpr double kPhi = 0.6180339887498949;
  double a = hi - kPhi * (hi - lo), b = lo + kPhi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int i = 0; i < iters; ++i) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kPhi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kPhi * (hi - lo);
      fb = f(b);
    }
  }
  *arg_min = fa <= fb ? a : b;
  return std::min(fa, fb);
}

}  // namespace

GridCenter grid_one_center(const PolygonDomain& dom, int resolution) {
  const SimplePolygon& poly = dom.polygon();
  const VertexFarthest f(dom);
  const Point lo = poly.bbox_min(), hi = poly.bbox_max();
  const int res = std::max(resolution, 2);
  const double wx = (hi.x - lo.x) / res, wy = (hi.y - lo.y) / res;
  Point best = poly.vertex(0);
  double best_f = f.inside(best);
  for (int i = 0; i <= res; ++i) {
    for (int j = 0; j <= res; ++j) {
      const Point q{lo.x + wx * i, lo.y + wy * j};
      if (point_in_polygon(poly, q) == Containment::Outside) continue;
      const double v = f.inside(q);
      if (v < best_f) {
        best_f = v;
        best = q;
      }
    }
  }
  // Nested golden section over a shrinking box around the incumbent.
  double hx = 2.0 * wx, hy = 2.0 * wy;
  for (int round = 0; round < 8; ++round) {
    double bx = best.x;
    auto along_x = [&](double x) {
      double by = best.y;
      return golden([&](double y) { return f({x, y}); }, best.y - hy, best.y + hy, 40, &by);
    };
    golden(along_x, best.x - hx, best.x + hx, 40, &bx);
    double by = best.y;
    const double v = golden([&](double y) { return f({bx, y}); }, best.y - hy, best.y + hy, 40, &by);
    if (v < best_f) {
      best_f = v;
      best = {bx, by};
    }
    hx *= 0.25;
    hy *= 0.25;
  }
  // Coordinate descent polish.
  double step = std::max(wx, wy) * 1e-3;
  const Point dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  while (step > 1e-8 * std::max(1.0, std::max(hi.x - lo.x, hi.y - lo.y))) {
    bool improved = false;
    for (const Point& d : dirs) {
      const Point q = best + d * step;
      const double v = f(q);
      if (v < best_f) {
        best_f = v;
        best = q;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  if (point_in_polygon(poly, best) == Containment::Outside) {
    best = poly.point_at(project_to_boundary(poly, best));
  }
  return {best, f.inside(best)};
}

SampledTwoCenter sampled_two_center(const PolygonDomain& dom, int boundary_samples, bool polish) {
  const SimplePolygon& poly = dom.polygon();
  const int k = std::max(boundary_samples, 4);
  const double perim = poly.perimeter();
  // Boundary coordinate at arc length s.
  auto at_length = [&](double s) {
    s = std::fmod(s, perim);
    if (s < 0.0) s += perim;
    for (int e = 0; e < poly.size(); ++e) {
      const double len = poly.edge_length(e);
      if (s <= len) return poly.canonical({e, s / len});
      s -= len;
    }
    return BoundaryCoord{0, 0.0};
  };
  const double step = perim / k;
  SampledTwoCenter best{kInf, {}, {}};
  double best_a = 0.0, best_b = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double r = maxrad(dom, at_length(i * step), at_length(j * step));
      if (r < best.radius) {
        best = {r, at_length(i * step), at_length(j * step)};
        best_a = i * step;
        best_b = j * step;
      }
    }
  }
  if (!polish) return best;
  // Alternate golden sections on the two arc-length positions.
  double span = step;
  for (int round = 0; round < 6; ++round) {
    double arg = best_a;
    double v = golden([&](double s) { return maxrad(dom, at_length(s), at_length(best_b)); }, best_a - span,
                      best_a + span, 30, &arg);
    if (v < best.radius) {
      best_a = arg;
      best = {v, at_length(best_a), at_length(best_b)};
    }
    arg = best_b;
    v = golden([&](double s) { return maxrad(dom, at_length(best_a), at_length(s)); }, best_b - span,
               best_b + span, 30, &arg);
    if (v < best.radius) {
      best_b = arg;
      best = {v, at_length(best_a), at_length(best_b)};
    }
    span *= 0.5;
  }
  return best;
}

}  // namespace geocenter
