#include "geocenter/onecenter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "geocenter/errors.hpp"

namespace geocenter {
namespace {

std::atomic<std::uint64_t> g_projections{0};

std::vector<int> witnesses_at(const SiteSet& sites, const Point& c, double radius) {
  std::vector<int> out;
  for (int s = 0; s < sites.size(); ++s) {
    if (sites.distance(s, c) >= radius - 1e-9 * (1.0 + radius)) out.push_back(sites[s].vertex);
  }
  return out;
}

double scale_of(const SimplePolygon& poly) { return dist(poly.bbox_min(), poly.bbox_max()); }

// Sites of P(alpha, beta): the chain ends and the vertices strictly between.
SiteSet chain_sites(const PolygonDomain& dom, const BoundaryCoord& alpha, const BoundaryCoord& beta) {
  const SimplePolygon& poly = dom.polygon();
  const BoundaryCoord a = poly.canonical(alpha), b = poly.canonical(beta);
  if (dist(poly.point_at(a), poly.point_at(b)) <= kOnBoundaryTol) {
    throw GeometryError(ErrorKind::DegeneratePartition, "partition points coincide");
  }
  SiteSet sites(dom);
  sites.add_boundary(a);
  for (int v : chain(poly, a, b).vertex_indices) {
    if (poly.vertex(v) == poly.point_at(a) || poly.vertex(v) == poly.point_at(b)) continue;
    sites.add_vertex(v);
  }
  sites.add_boundary(b);
  return sites;
}

}  // namespace

OneCenterResult one_center(const PolygonDomain& dom) {
  std::vector<int> all(static_cast<std::size_t>(dom.size()));
  for (int v = 0; v < dom.size(); ++v) all[v] = v;
  SiteSet sites(dom);
  for (int v : all) sites.add_vertex(v);
  const FarthestVoronoi fvd = farthest_voronoi(sites);

  // The minimum sits at a diagram vertex or where an edge meets the midpoint
  // of the path between its two sites.
  Point best_c = sites[0].p;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const Point& c) {
    const double f = sites.max_distance(c);
    if (f < best - 1e-12 * (1.0 + f)) {
      best = f;
      best_c = c;
    }
  };
  for (const VoronoiVertex& v : fvd.vertices()) consider(v.p);
  for (const VoronoiEdge& e : fvd.edges()) {
    const Site& a = sites[e.sites[0]];
    const Site& b = sites[e.sites[1]];
    const double d = site_distance(a, b);
    const Point mid = point_along(a, b, 0.5 * d);
    if (sites.max_distance(mid) <= 0.5 * d + 1e-9 * (1.0 + d)) consider(mid);
  }
  if (fvd.vertices().empty()) {
    const EnclosingBall ball = min_enclosing_ball(sites);
    consider(ball.center);
  }
  return {best_c, best, witnesses_at(sites, best_c, best)};
}

RestrictedRadius restricted_radius(const PolygonDomain& dom, const BoundaryCoord& alpha,
                                   const BoundaryCoord& beta) {
  const SimplePolygon& poly = dom.polygon();
  const SiteSet sites = chain_sites(dom, alpha, beta);
  const EnclosingBall ball = min_enclosing_ball(sites);
  RestrictedRadius out{poly.canonical(alpha), poly.canonical(beta), ball.radius, ball.center};

  const SubPolygon sub = subpolygon(dom, out.alpha, out.beta);
  const double tol = 1e-9 * (1.0 + scale_of(poly));
  bool inside = ring_contains(sub.ring, ball.center);
  if (!inside) {
    for (std::size_t i = 0; i < sub.ring.size() && !inside; ++i) {
      const Point a = sub.ring[i], b = sub.ring[(i + 1) % sub.ring.size()];
      const Point ab = b - a;
      const double len2 = dot(ab, ab);
      const double t = len2 > 0.0 ? std::clamp(dot(ball.center - a, ab) / len2, 0.0, 1.0) : 0.0;
      inside = dist(lerp(a, b, t), ball.center) <= tol;
    }
  }
  if (!inside) {
    // Minimize along the closing path instead.
    ++g_projections;
    const double len = sub.closing_path.length;
    double lo = 0.0, hi = len;
    auto f = [&](double s) { return sites.max_distance(sub.closing_path.point_at(poly, s)); };
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + len); ++i) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (f(m1) <= f(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    out.center = sub.closing_path.point_at(poly, 0.5 * (lo + hi));
    out.radius = f(0.5 * (lo + hi));
  }
  return out;
}

double maxrad(const PolygonDomain& dom, const BoundaryCoord& alpha, const BoundaryCoord& beta) {
  return std::max(restricted_radius(dom, alpha, beta).radius, restricted_radius(dom, beta, alpha).radius);
}

OneCenterResult one_center(const PolygonDomain& dom, const SubPolygon& sub) {
  const RestrictedRadius r = restricted_radius(dom, sub.chain.from, sub.chain.to);
  const SiteSet sites = chain_sites(dom, sub.chain.from, sub.chain.to);
  return {r.center, r.radius, witnesses_at(sites, r.center, r.radius)};
}

std::uint64_t restricted_projection_count() { return g_projections.load(); }

}  // namespace geocenter
