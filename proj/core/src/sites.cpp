#include "geocenter/sites.hpp"

#include "geocenter/bisector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace geocenter {

void SiteSet::add_vertex(int v) {
  const int w = dom_->polygon().wrap(v);
  sites_.push_back({dom_->polygon().vertex(w), &dom_->vertex_map(w), w});
}

void SiteSet::add_point(const Point& p) {
  owned_.push_back(std::make_unique<ShortestPathMap>(dom_->triangulation(), p));
  sites_.push_back({p, owned_.back().get(), -1});
}

void SiteSet::add_boundary(const BoundaryCoord& c) {
  const BoundaryCoord k = dom_->polygon().canonical(c);
  if (k.t == 0.0) {
    add_vertex(k.edge);
  } else {
    add_point(dom_->polygon().point_at(k));
  }
}

std::vector<const ShortestPathMap*> SiteSet::maps() const {
  std::vector<const ShortestPathMap*> out;
  out.reserve(sites_.size());
  for (const Site& s : sites_) out.push_back(s.map);
  return out;
}

double SiteSet::max_distance(const Point& q, int* arg) const {
  const int t = dom_->triangulation().locate_nearest(q);
  double best = -1.0;
  int best_i = -1;
  for (int i = 0; i < size(); ++i) {
    const double d = sites_[i].map->distance_in(t, q);
    if (d > best) {
      best = d;
      best_i = i;
    }
  }
  if (arg) *arg = best_i;
  return best;
}

namespace {

std::vector<Point> site_path(const Site& a, const Site& b) {
  const auto loc = a.map->locate(b.p);
  const SimplePolygon& poly = a.map->triangulation().polygon();
  std::vector<Point> pts{a.p};
  for (int v : a.map->vertices_to(loc.node)) {
    const Point p = poly.vertex(v);
    if (p == a.p || p == b.p) continue;
    pts.push_back(p);
  }
  pts.push_back(b.p);
  return pts;
}

}  // namespace

double site_distance(const Site& a, const Site& b) { return a.map->distance(b.p); }

Point point_along(const Site& a, const Site& b, double s) {
  const std::vector<Point> pts = site_path(a, b);
  if (s <= 0.0) return pts.front();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = dist(pts[i], pts[i + 1]);
    if (s <= len) return lerp(pts[i], pts[i + 1], len > 0.0 ? s / len : 0.0);
    s -= len;
  }
  return pts.back();
}

namespace {

struct Anchor {
  int node = -1;
  Point p;
  double d = 0.0;
};

Anchor anchor_of(const Site& s, int t, const Point& q) {
  const auto loc = s.map->locate_in(t, q);
  const PathNode& nd = s.map->node(loc.node);
  return {loc.node, nd.p, nd.dist};
}

// Circles |q - A_k| = rho - D_k through a common point. Solutions with
// rho >= max D_k, ordered by distance from `near`.
std::vector<Equidistant> solve_circles(const std::array<Anchor, 3>& an, const Point& near) {
  const Point o = an[0].p;
  const Point b = an[1].p - o;
  const Point c = an[2].p - o;
  const double da = an[0].d, db = an[1].d, dc = an[2].d;
  // 2 q.(-b) = -|b|^2 + db^2 - da^2 - 2 rho (db - da), same for c.
  const double det = 4.0 * cross(b, c);
  const double scale = std::max({dot(b, b), dot(c, c), 1e-300});
  if (std::abs(det) <= 1e-13 * scale) return {};
  // Rows: -2b, -2c. Right sides k0 + k1 rho.
  const double k0b = -dot(b, b) + db * db - da * da, k1b = -2.0 * (db - da);
  const double k0c = -dot(c, c) + dc * dc - da * da, k1c = -2.0 * (dc - da);
  // Solve [-2bx -2by; -2cx -2cy] q = k.
  const double m00 = -2.0 * b.x, m01 = -2.0 * b.y, m10 = -2.0 * c.x, m11 = -2.0 * c.y;
  const double dm = m00 * m11 - m01 * m10;
  const Point q0{(k0b * m11 - m01 * k0c) / dm, (m00 * k0c - k0b * m10) / dm};
  const Point q1{(k1b * m11 - m01 * k1c) / dm, (m00 * k1c - k1b * m10) / dm};
  // |q0 + q1 rho|^2 = (rho - da)^2
  const double qa = dot(q1, q1) - 1.0;
  const double qb = 2.0 * (dot(q0, q1) + da);
  const double qc = dot(q0, q0) - da * da;
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 0.0) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= -1e-14 * (qb * qb + std::abs(4.0 * qa * qc))) {
      const double sq = std::sqrt(std::max(disc, 0.0));
      const double r1 = (-qb - std::copysign(sq, qb)) / 2.0;
      if (r1 != 0.0) {
        roots.push_back(r1 / qa);
        roots.push_back(qc / r1);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  const double floor_d = std::max({da, db, dc});
  std::vector<Equidistant> out;
  for (double rho : roots) {
    if (!std::isfinite(rho) || rho < floor_d - 1e-12 * (1.0 + floor_d)) continue;
    out.push_back({o + q0 + q1 * rho, rho});
  }
  std::sort(out.begin(), out.end(), [&](const Equidistant& x, const Equidistant& y) {
    return dist2(x.q, near) < dist2(y.q, near);
  });
  return out;
}

}  // namespace

std::optional<Equidistant> equidistant_point(const Triangulation& tri, const Site& a, const Site& b,
                                             const Site& c, const Point& start) {
  const SimplePolygon& poly = tri.polygon();
  const double scale = dist(poly.bbox_min(), poly.bbox_max());
  const std::array<const Site*, 3> s{&a, &b, &c};
  Point q = start;
  std::vector<std::array<int, 3>> seen;
  for (int iter = 0; iter < 40; ++iter) {
    const int t = tri.locate_nearest(q);
    std::array<Anchor, 3> an;
    for (int k = 0; k < 3; ++k) an[k] = anchor_of(*s[k], t, q);
    const std::array<int, 3> key{an[0].node, an[1].node, an[2].node};
    if (std::find(seen.begin(), seen.end(), key) != seen.end() && iter > 0) {
      // Anchor sets cycle; accept q if it is already equidistant.
      break;
    }
    seen.push_back(key);
    const auto sols = solve_circles(an, q);
    if (sols.empty()) break;
    bool moved = false;
    for (const Equidistant& e : sols) {
      if (point_in_polygon(poly, e.q) == Containment::Outside) continue;
      const int t2 = tri.locate_nearest(e.q);
      bool same = true;
      for (int k = 0; k < 3; ++k) same = same && anchor_of(*s[k], t2, e.q).node == key[k];
      if (same) return e;
      if (!moved) {
        q = e.q;
        moved = true;
      }
    }
    if (!moved) break;
  }
  // Accept the last iterate if the distances agree.
  if (point_in_polygon(poly, q) != Containment::Outside) {
    const double da = a.map->distance(q), db = b.map->distance(q), dc = c.map->distance(q);
    const double tol = 1e-9 * (1.0 + scale);
    if (std::abs(da - db) <= tol && std::abs(da - dc) <= tol) return Equidistant{q, std::max({da, db, dc})};
  }
  return std::nullopt;
}

namespace {

struct Ball {
  Point c;
  double r = 0.0;
};

class Welzl {
 public:
  explicit Welzl(const SiteSet& s) : s_(s) {
    const SimplePolygon& poly = s.domain().polygon();
    tol_ = 1e-10 * (1.0 + dist(poly.bbox_min(), poly.bbox_max()));
  }

  bool covers(const Ball& b, int i) const { return s_.distance(i, b.c) <= b.r + tol_; }

  Ball two(int i, int j) const {
    const double d = site_distance(s_[i], s_[j]);
    return {point_along(s_[i], s_[j], 0.5 * d), 0.5 * d};
  }

  Ball three(int i, int j, int k, const Ball& hint) const {
    const Triangulation& tri = s_.domain().triangulation();
    if (const auto e = equidistant_point(tri, s_[i], s_[j], s_[k], hint.c)) return {e->q, e->rho};
    if (const auto b = traced_three(i, j, k)) return *b;
    // No equidistant point: fall back to the cheapest pairwise ball covering all three.
    Ball best{hint.c, std::numeric_limits<double>::infinity()};
    const std::array<std::array<int, 3>, 3> trip{{{i, j, k}, {i, k, j}, {j, k, i}}};
    for (const auto& t : trip) {
      const Ball b = two(t[0], t[1]);
      if (covers(b, t[2]) && b.r < best.r) best = b;
    }
    if (!std::isfinite(best.r)) {
      best = hint;
      best.r = std::max({s_.distance(i, best.c), s_.distance(j, best.c), s_.distance(k, best.c)});
    }
    return best;
  }

  // Walks the bisector of i and j away from their geodesic midpoint until k
  // is as far as they are; used when the anchor iteration does not settle.
  std::optional<Ball> traced_three(int i, int j, int k) const {
    const SimplePolygon& poly = s_.domain().polygon();
    const double d = site_distance(s_[i], s_[j]);
    if (d <= tol_) return std::nullopt;
    const Point mid = point_along(s_[i], s_[j], 0.5 * d);
    const double eps = std::min(1e-6, 0.25 * d);
    const Point along = point_along(s_[i], s_[j], 0.5 * d + eps) - point_along(s_[i], s_[j], 0.5 * d - eps);
    const double h = 2e-3 * dist(poly.bbox_min(), poly.bbox_max());
    auto gap = [&](const Point& q) { return s_.distance(i, q) - s_.distance(k, q); };
    for (double side : {1.0, -1.0}) {
      bool hit = false;
      const std::vector<Point> pts = trace_level_set(s_[i], s_[j], mid, perp(along) * side, h, nullptr, &hit);
      Point prev = mid;
      for (const Point& q : pts) {
        if (gap(q) < 0.0) {
          prev = q;
          continue;
        }
        Point lo = prev, hi = q;
        for (int it = 0; it < 60; ++it) {
          const Point m = lerp(lo, hi, 0.5);
          (gap(m) < 0.0 ? lo : hi) = m;
        }
        const Point c = lerp(lo, hi, 0.5);
        const Triangulation& tri = s_.domain().triangulation();
        if (const auto e = equidistant_point(tri, s_[i], s_[j], s_[k], c)) return Ball{e->q, e->rho};
        return Ball{c, std::max({s_.distance(i, c), s_.distance(j, c), s_.distance(k, c)})};
      }
    }
    return std::nullopt;
  }

  Ball solve(std::span<const int> order) const {
    Ball b{s_[order[0]].p, 0.0};
    for (std::size_t a = 1; a < order.size(); ++a) {
      if (covers(b, order[a])) continue;
      b = {s_[order[a]].p, 0.0};
      for (std::size_t c = 0; c < a; ++c) {
        if (covers(b, order[c])) continue;
        b = two(order[a], order[c]);
        for (std::size_t d = 0; d < c; ++d) {
          if (covers(b, order[d])) continue;
          b = three(order[a], order[c], order[d], b);
        }
      }
    }
    return b;
  }

  double tol() const { return tol_; }

 private:
  const SiteSet& s_;
  double tol_;
};

}  // namespace

EnclosingBall min_enclosing_ball(const SiteSet& sites) {
  EnclosingBall out;
  const int m = sites.size();
  if (m == 0) return out;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(m));
  std::shuffle(order.begin(), order.end(), rng);
  const Welzl w(sites);
  Ball b = w.solve(order);
  out.center = b.c;
  out.radius = sites.max_distance(b.c);
  for (int i = 0; i < m; ++i) {
    if (sites.distance(i, b.c) >= out.radius - 1e-9 * (1.0 + out.radius)) out.support.push_back(i);
  }
  return out;
}

}  // namespace geocenter
