#include "geocenter/disks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "geocenter/errors.hpp"
#include "geocenter/predicates.hpp"

namespace geocenter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Point on_circle(const Point& c, double rho, double phi) { return c + Point{std::cos(phi), std::sin(phi)} * rho; }

// Clockwise sweep from angle `from` to angle `to`, in [0, 2pi).
double cw_sweep(double from, double to) {
  double d = std::fmod(from - to, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d;
}

double scale_of(const SimplePolygon& poly) { return std::max(dist(poly.bbox_min(), poly.bbox_max()), 1e-300); }

// Angles where the circle (c, rho) meets the line through p0 with direction d.
int line_angles(const Point& c, double rho, const Point& p0, const Point& d, double out[2]) {
  const double len = norm(d);
  if (len == 0.0) return 0;
  const Point u = d / len;
  const double a = cross(u, c - p0);
  // cross(u, c + rho (cos, sin) - p0) = a + rho (u.x sin - u.y cos)
  const double b = rho * u.x, k = -rho * u.y;
  const double rr = std::hypot(b, k);
  if (rr == 0.0 || std::abs(a) > rr) return 0;
  const double psi = std::atan2(k, b);
  const double s = std::asin(std::clamp(-a / rr, -1.0, 1.0));
  out[0] = s - psi;
  out[1] = std::numbers::pi - s - psi;
  return 2;
}

struct HalfPlane {
  Point p0;
  Point d;
  double sign;  // inside: sign * cross(d, q - p0) >= 0
  int tri_edge = -1;
};

enum class Mode { Circle, Boundary };

class Tracer {
 public:
  Tracer(const SiteSet& sites, double r)
      : s_(sites),
        tri_(sites.domain().triangulation()),
        poly_(sites.domain().polygon()),
        r_(r),
        scale_(scale_of(poly_)),
        probe_(1e-9 * scale_of(poly_)) {}

  std::vector<ArcPiece> run(const Point& q0, int site0) {
    start_circle(q0, site0, tri_.locate_nearest(q0));
    start_site_ = site_;
    start_node_ = node_;
    start_angle_ = theta_;
    start_point_ = q0;
    const long cap = 20000L + 400L * (poly_.size() + s_.size()) * (poly_.size() + s_.size());
    for (long it = 0; it < cap && !closed_; ++it) {
      const std::size_t before = pieces_.size();
      if (stall_ > 6) {
        nudge();
      } else if (mode_ == Mode::Circle) {
        circle_step();
      } else {
        boundary_step();
      }
      stall_ = pieces_.size() > before ? 0 : stall_ + 1;
    }
    if (!closed_) throw std::runtime_error("disk intersection boundary did not close");
    return std::move(pieces_);
  }

 private:
  const ShortestPathMap& map(int s) const { return *s_[s].map; }

  void start_circle(const Point& q, int site, int t) {
    mode_ = Mode::Circle;
    site_ = site;
    const auto loc = map(site).locate_in(t, q);
    set_node(loc.node, q);
  }

  void set_node(int node, const Point& q) {
    node_ = node;
    const PathNode& nd = map(site_).node(node);
    center_ = nd.p;
    rho_ = r_ - nd.dist;
    theta_ = std::atan2(q.y - center_.y, q.x - center_.x);
  }

  Point here() const { return on_circle(center_, rho_, theta_); }

  // Site whose distance exceeds r at `ahead`, or sits at r at q and grows
  // along `dir`; -1 if none.
  int violator(const Point& q, const Point& ahead, const Point& dir, int t, int skip) const {
    int best = -1;
    double best_d = r_ + 1e-12 * (1.0 + r_);
    double best_slope = 0.0;
    for (int s = 0; s < s_.size(); ++s) {
      if (s == skip) continue;
      const auto loc = map(s).locate_in(t, ahead);
      const PathNode& nd = map(s).node(loc.node);
      const double d = nd.dist + dist(nd.p, ahead);
      if (d > best_d) {
        best_d = d;
        best = s;
        best_slope = kInf;
        continue;
      }
      const double dq = nd.dist + dist(nd.p, q);
      const double len = dist(nd.p, q);
      if (best_slope == kInf || std::abs(dq - r_) > 1e-9 * (1.0 + r_) || len == 0.0) continue;
      const double slope = dot(q - nd.p, dir) / (len * norm(dir));
      if (slope > 1e-9 && slope > best_slope) {
        best_slope = slope;
        best = s;
      }
    }
    return best;
  }

  void enter_boundary(const Point& q) {
    const BoundaryCoord bc = poly_.canonical(project_to_boundary(poly_, q));
    mode_ = Mode::Boundary;
    edge_ = bc.edge;
    tau_ = bc.t;
  }

  // Degenerate contact (level set through a vertex, tangency): step a probe
  // length forward in the current mode instead of switching again.
  void nudge() {
    if (mode_ == Mode::Circle) {
      const double dphi = std::min(2.0 * probe_ / rho_, 1e-3);
      emit_circle(tri_.locate_nearest(here()), dphi);
      theta_ -= dphi;
      return;
    }
    const Point a = poly_.vertex(edge_), b = poly_.vertex(edge_ + 1);
    ArcPiece p;
    p.circular = false;
    p.edge = edge_;
    p.t0 = tau_;
    p.t1 = std::min(tau_ + std::min(probe_ / dist(a, b), 1e-3), 1.0);
    p.triangle = tri_.edge_triangle(edge_);
    p.start = lerp(a, b, p.t0);
    p.end = lerp(a, b, p.t1);
    emit_straight(p);
    if (closed_) return;
    if (p.t1 >= 1.0) {
      edge_ = poly_.wrap(edge_ + 1);
      tau_ = 0.0;
    } else {
      tau_ = p.t1;
    }
  }

  // Appends a straight piece, cut short and closing the trace if it runs
  // through the starting point.
  void emit_straight(ArcPiece p) {
    if (pieces_.size() > 1) {
      const Point a = poly_.vertex(p.edge), b = poly_.vertex(p.edge + 1);
      const double ts = std::clamp(dot(start_point_ - a, b - a) / dist2(a, b), 0.0, 1.0);
      if (ts >= p.t0 - 1e-12 && ts <= p.t1 + 1e-12 && dist(lerp(a, b, ts), start_point_) <= 1e-9 * scale_) {
        p.t1 = std::max(ts, p.t0);
        p.end = lerp(a, b, p.t1);
        if (p.t1 > p.t0) pieces_.push_back(p);
        closed_ = true;
        return;
      }
    }
    if (p.t1 > p.t0) pieces_.push_back(p);
  }

  void emit_circle(int t, double sweep) {
    ArcPiece p;
    p.circular = true;
    p.site = site_;
    p.anchor_node = node_;
    p.center = center_;
    p.arc_radius = rho_;
    p.angle_start = theta_;
    p.angle_end = theta_ - sweep;
    p.triangle = t;
    p.start = here();
    p.end = on_circle(center_, rho_, p.angle_end);
    pieces_.push_back(p);
  }

  void circle_step() {
    if (rho_ <= 0.0) throw std::runtime_error("disk intersection trace reached a zero-radius arc");
    const double dphi = std::min(probe_ / rho_, 1e-3);
    const Point q = here();
    const Point probe = on_circle(center_, rho_, theta_ - dphi);
    const int t = tri_.locate(probe);
    if (t < 0) {
      enter_boundary(q);
      return;
    }
    const auto loc = map(site_).locate_in(t, probe);
    if (loc.node != node_) {
      const PathNode& nd = map(site_).node(loc.node);
      if (nd.vertex >= 0 && r_ - nd.dist <= 1e-12 * scale_) {
        // The level set passes through a polygon vertex: continue on its outgoing edge.
        mode_ = Mode::Boundary;
        edge_ = nd.vertex;
        tau_ = 0.0;
        return;
      }
      set_node(loc.node, q);
      if (++switches_ > 8) throw std::runtime_error("disk intersection trace cannot settle on an anchor");
      return;
    }
    switches_ = 0;
    if (const int v = violator(q, probe, Point{std::sin(theta_), -std::cos(theta_)}, t, site_); v >= 0) {
      const auto l2 = map(v).locate_in(t, probe);
      site_ = v;
      set_node(l2.node, q);
      return;
    }

    std::vector<HalfPlane> planes;
    for (int k = 0; k < 3; ++k) {
      const Point a = tri_.corner(t, k), b = tri_.corner(t, (k + 1) % 3);
      planes.push_back({a, b - a, -1.0, k});
    }
    if (t != map(site_).root_triangle()) {
      const Funnel& f = map(site_).funnel(t);
      const int pos = map(site_).anchor_position(f, probe);
      const Wedge w = map(site_).wedge(f, pos);
      if (w.has_left) planes.push_back({w.origin, w.left_dir, -1.0, -1});
      if (w.has_right) planes.push_back({w.origin, w.right_dir, 1.0, -1});
    }
    double exit = kTwoPi;
    int exit_edge = -1;
    for (const HalfPlane& h : planes) {
      double ang[2];
      const int m = line_angles(center_, rho_, h.p0, h.d, ang);
      for (int i = 0; i < m; ++i) {
        // Leaving the half-plane while the angle decreases.
        const Point tangent{-std::sin(ang[i]), std::cos(ang[i])};
        if (h.sign * cross(h.d, tangent) <= 0.0) continue;
        const double sw = cw_sweep(theta_, ang[i]);
        if (sw < 0.5 * dphi) continue;
        if (sw < exit) {
          exit = sw;
          exit_edge = h.tri_edge;
        }
      }
    }

    double event = exit;
    int ev_site = -1, ev_node = -1;
    for (int s = 0; s < s_.size(); ++s) {
      if (s == site_) continue;
      const ShortestPathMap& m = map(s);
      auto try_node = [&](int node, const Wedge* w) {
        const PathNode& nd = m.node(node);
        const double rw = r_ - nd.dist;
        if (rw <= 0.0) return;
        const Point dv = nd.p - center_;
        const double d = norm(dv);
        if (d == 0.0 || d > rho_ + rw || d < std::abs(rho_ - rw)) return;
        const double a = (rho_ * rho_ - rw * rw + d * d) / (2.0 * d);
        const double al = std::acos(std::clamp(a / rho_, -1.0, 1.0));
        const double g = std::atan2(dv.y, dv.x);
        for (double phi : {g + al, g - al}) {
          const Point p = on_circle(center_, rho_, phi);
          const Point tangent{-std::sin(phi), std::cos(phi)};
          // Distance to the other anchor grows as the angle decreases.
          if (-dot(p - nd.p, tangent) <= 0.0) continue;
          if (w && !w->contains(p, 1e-9 * scale_)) continue;
          const double sw = cw_sweep(theta_, phi);
          if (sw < 0.5 * dphi || sw >= event) continue;
          event = sw;
          ev_site = s;
          ev_node = node;
        }
      };
      if (t == m.root_triangle()) {
        try_node(m.root_node(), nullptr);
      } else {
        const Funnel& f = m.funnel(t);
        for (int pos = 0; pos < static_cast<int>(f.chain.size()); ++pos) {
          const Wedge w = m.wedge(f, pos);
          try_node(f.chain[pos], &w);
        }
      }
    }

    // Closing check against the starting arc.
    if (site_ == start_site_ && node_ == start_node_ && !pieces_.empty()) {
      double k = cw_sweep(theta_, start_angle_);
      if (k >= kTwoPi - 0.5 * dphi) k = 0.0;
      if (k <= event + 0.5 * dphi) {
        if (k > 0.5 * dphi) emit_circle(t, std::min(k, event));
        closed_ = true;
        return;
      }
    } else if (pieces_.empty() && event >= kTwoPi) {
      emit_circle(t, kTwoPi);
      closed_ = true;
      return;
    }

    emit_circle(t, event);
    theta_ -= event;
    const Point p = here();
    if (ev_site >= 0) {
      site_ = ev_site;
      set_node(ev_node, p);
      return;
    }
    if (exit_edge >= 0 && tri_.neighbor(t, exit_edge) < 0) {
      mode_ = Mode::Boundary;
      edge_ = tri_.triangle(t)[exit_edge];
      const Point a = poly_.vertex(edge_), b = poly_.vertex(edge_ + 1);
      tau_ = std::clamp(dot(p - a, b - a) / dist2(a, b), 0.0, 1.0);
    }
  }

  void boundary_step() {
    const Point a = poly_.vertex(edge_), b = poly_.vertex(edge_ + 1);
    const Point d = b - a;
    const double len = norm(d);
    const double eps = std::min(0.5 * probe_ / len, 1e-3);
    const int t = tri_.edge_triangle(edge_);
    const Point q = lerp(a, b, tau_);

    const Point ahead = lerp(a, b, std::min(tau_ + 2.0 * eps, 1.0));
    if (const int v = violator(q, ahead, d, t, -1); v >= 0) {
      mode_ = Mode::Circle;
      site_ = v;
      set_node(map(v).locate_in(t, ahead).node, q);
      return;
    }

    double best = 1.0;
    int ev_site = -1, ev_node = -1;
    for (int s = 0; s < s_.size(); ++s) {
      const ShortestPathMap& m = map(s);
      auto try_node = [&](int node, const Wedge* w) {
        const PathNode& nd = m.node(node);
        const double rw = r_ - nd.dist;
        if (rw <= 0.0) return;
        const Point e = a - nd.p;
        const double qa = dot(d, d), qb = 2.0 * dot(d, e), qc = dot(e, e) - rw * rw;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) return;
        const double sq = std::sqrt(disc);
        for (double tt : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
          if (tt <= tau_ + eps || tt > best) continue;
          const Point p = lerp(a, b, tt);
          if (dot(d, p - nd.p) <= 0.0) continue;
          if (w && !w->contains(p, 1e-9 * scale_)) continue;
          best = tt;
          ev_site = s;
          ev_node = node;
        }
      };
      if (t == m.root_triangle()) {
        try_node(m.root_node(), nullptr);
      } else {
        const Funnel& f = m.funnel(t);
        for (int pos = 0; pos < static_cast<int>(f.chain.size()); ++pos) {
          const Wedge w = m.wedge(f, pos);
          try_node(f.chain[pos], &w);
        }
      }
    }

    ArcPiece p;
    p.circular = false;
    p.edge = edge_;
    p.t0 = tau_;
    p.t1 = best;
    p.triangle = t;
    p.start = q;
    p.end = lerp(a, b, best);
    emit_straight(p);
    if (closed_) return;
    if (ev_site >= 0) {
      mode_ = Mode::Circle;
      site_ = ev_site;
      set_node(ev_node, p.end);
    } else {
      edge_ = poly_.wrap(edge_ + 1);
      tau_ = 0.0;
    }
  }

  const SiteSet& s_;
  const Triangulation& tri_;
  const SimplePolygon& poly_;
  double r_;
  double scale_;
  double probe_;

  Mode mode_ = Mode::Circle;
  int site_ = -1;
  int node_ = -1;
  Point center_;
  double rho_ = 0.0;
  double theta_ = 0.0;
  int edge_ = -1;
  double tau_ = 0.0;
  int switches_ = 0;
  int stall_ = 0;

  int start_site_ = -1;
  int start_node_ = -1;
  double start_angle_ = 0.0;
  Point start_point_;
  bool closed_ = false;
  std::vector<ArcPiece> pieces_;
};

// First boundary hit of the ray from p in direction d.
double ray_exit(const SimplePolygon& poly, const Point& p, const Point& d) {
  double best = kInf;
  for (int e = 0; e < poly.size(); ++e) {
    const Point a = poly.vertex(e), b = poly.vertex(e + 1);
    const double den = cross(d, b - a);
    if (den == 0.0) continue;
    const double s = cross(a - p, b - a) / den;
    const double u = cross(a - p, d) / den;
    if (s > 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) best = std::min(best, s);
  }
  return best;
}

struct StartCandidate {
  Point q;
  int site = -1;
  double clearance = -1.0;
};

// Crossing of the level r on rays from `origin`; keeps the one farthest from
// the polygon boundary.
StartCandidate rays_from(const SiteSet& sites, double r, const Point& origin) {
  const SimplePolygon& poly = sites.domain().polygon();
  const double scale = scale_of(poly);
  std::vector<Point> dirs;
  for (int v = 0; v < poly.size(); ++v) {
    const Point d = poly.vertex(v) - origin;
    if (norm(d) > 0.0) dirs.push_back(d / norm(d));
  }
  for (int k = 0; k < 16; ++k) {
    const double a = 0.1 + k * kTwoPi / 16.0;
    dirs.push_back({std::cos(a), std::sin(a)});
  }
  StartCandidate best;
  for (const Point& d : dirs) {
    const double hit = ray_exit(poly, origin, d);
    if (!std::isfinite(hit)) continue;
    if (point_in_polygon(poly, origin + d * std::min(1e-7 * scale, 0.5 * hit)) == Containment::Outside) continue;
    if (point_in_polygon(poly, origin + d * (0.5 * hit)) == Containment::Outside) continue;
    if (sites.max_distance(origin + d * hit) <= r) continue;
    double lo = 0.0, hi = hit;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * scale; ++i) {
      const double mid = 0.5 * (lo + hi);
      (sites.max_distance(origin + d * mid) > r ? hi : lo) = mid;
    }
    StartCandidate c;
    c.q = origin + d * hi;
    sites.max_distance(c.q, &c.site);
    c.clearance = dist(c.q, poly.point_at(project_to_boundary(poly, c.q)));
    if (c.clearance > best.clearance) best = c;
    if (best.clearance > 1e-7 * scale) break;
  }
  return best;
}

// A point on the boundary of the intersection, away from the polygon boundary
// when possible, plus its farthest site. site == -1 when no vertex is outside.
StartCandidate start_point(const SiteSet& sites, double r, const Point& inner) {
  const SimplePolygon& poly = sites.domain().polygon();
  const double scale = scale_of(poly);
  StartCandidate best = rays_from(sites, r, inner);
  if (best.clearance > 1e-7 * scale) return best;
  // Parts of the polygon hidden from `inner`: follow geodesics to far vertices.
  for (int v = 0; v < poly.size(); ++v) {
    if (sites.max_distance(poly.vertex(v)) <= r) continue;
    const GeodesicPath path = shortest_path(sites.domain(), inner, poly.vertex(v));
    const std::vector<Point> pts = path.points(poly);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (sites.max_distance(pts[k + 1]) <= r) continue;
      double lo = 0.0, hi = 1.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sites.max_distance(lerp(pts[k], pts[k + 1], mid)) > r ? hi : lo) = mid;
      }
      StartCandidate c = rays_from(sites, r, lerp(pts[k], pts[k + 1], 0.5 * hi));
      if (c.site < 0) {
        c.q = lerp(pts[k], pts[k + 1], hi);
        sites.max_distance(c.q, &c.site);
        c.clearance = 0.0;
      }
      if (c.clearance > best.clearance) best = c;
      if (best.clearance > 1e-7 * scale) return best;
      break;
    }
  }
  return best;
}

bool same_arc(const ArcPiece& a, const ArcPiece& b) {
  if (a.circular != b.circular) return false;
  // A vertex site is reachable both as the root node and as its own vertex
  // node, so anchors are compared by position.
  if (a.circular) return a.site == b.site && a.center == b.center;
  return a.edge == b.edge;
}

std::vector<ArcPiece> merge_pieces(const std::vector<ArcPiece>& pieces) {
  std::vector<ArcPiece> out;
  if (pieces.empty()) return out;
  const std::size_t n = pieces.size();
  std::size_t first = 0;
  while (first < n && same_arc(pieces[first], pieces[(first + n - 1) % n])) ++first;
  if (first == n) first = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const ArcPiece& p = pieces[(first + k) % n];
    if (!out.empty() && same_arc(out.back(), p) && !(n > 1 && k == 0)) {
      ArcPiece& m = out.back();
      if (p.circular) {
        m.angle_end = m.angle_end - (p.angle_start - p.angle_end);
      } else {
        m.t1 = p.t1;
      }
      m.end = p.end;
      m.triangle = -1;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

Point ArcPiece::point_at(double frac) const {
  if (circular) return on_circle(center, arc_radius, angle_start + (angle_end - angle_start) * frac);
  return lerp(start, end, frac);
}

double ArcPiece::length() const {
  return circular ? arc_radius * (angle_start - angle_end) : dist(start, end);
}

int DiskIntersection::circular_arc_count() const {
  return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [](const ArcPiece& a) { return a.circular; }));
}

std::vector<ArcPiece> DiskIntersection::refined(std::span<const ShortestPathMap* const> maps) const {
  std::vector<ArcPiece> out;
  for (const ArcPiece& p : pieces) {
    std::vector<double> cuts;  // fractions in (0, 1)
    for (const ShortestPathMap* m : maps) {
      if (p.triangle < 0 || p.triangle == m->root_triangle()) continue;
      const Funnel& f = m->funnel(p.triangle);
      for (int pos = 0; pos < static_cast<int>(f.chain.size()); ++pos) {
        const Wedge w = m->wedge(f, pos);
        for (int side = 0; side < 2; ++side) {
          if (!(side == 0 ? w.has_left : w.has_right)) continue;
          const Point d = side == 0 ? w.left_dir : w.right_dir;
          if (p.circular) {
            double ang[2];
            const int k = line_angles(p.center, p.arc_radius, w.origin, d, ang);
            const double sweep = p.angle_start - p.angle_end;
            for (int i = 0; i < k; ++i) {
              if (dot(on_circle(p.center, p.arc_radius, ang[i]) - w.origin, d) < 0.0) continue;
              const double s = cw_sweep(p.angle_start, ang[i]);
              if (s > 1e-12 && s < sweep - 1e-12) cuts.push_back(s / sweep);
            }
          } else {
            const Point e = p.end - p.start;
            const double den = cross(e, d);
            if (den == 0.0) continue;
            const double s = cross(w.origin - p.start, d) / den;
            const double u = cross(w.origin - p.start, e) / den;
            if (u >= 0.0 && s > 1e-12 && s < 1.0 - 1e-12) cuts.push_back(s);
          }
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-12; }), cuts.end());
    cuts.push_back(1.0);
    double prev = 0.0;
    for (double c : cuts) {
      ArcPiece q = p;
      if (p.circular) {
        const double sweep = p.angle_start - p.angle_end;
        q.angle_start = p.angle_start - sweep * prev;
        q.angle_end = p.angle_start - sweep * c;
      } else {
        q.t0 = p.t0 + (p.t1 - p.t0) * prev;
        q.t1 = p.t0 + (p.t1 - p.t0) * c;
      }
      q.start = p.point_at(prev);
      q.end = p.point_at(c);
      out.push_back(q);
      prev = c;
    }
  }
  return out;
}

bool DiskIntersection::contains(const Point& q) const {
  if (empty) return false;
  if (full) return true;
  if (single_point) return q == point;
  // Even-odd rule against a ray in +x, half-open in y so that shared piece
  // endpoints count once. Arcs are split into y-monotone parts.
  bool inside = false;
  auto crosses = [&](const Point& a, const Point& b) { return (a.y > q.y) != (b.y > q.y); };
  for (const ArcPiece& p : pieces) {
    if (!p.circular) {
      const Point a = p.start, b = p.end;
      if (crosses(a, b)) {
        const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (x > q.x) inside = !inside;
      }
      continue;
    }
    const double sweep = p.angle_start - p.angle_end;
    std::vector<double> cuts{0.0};
    // Angles pi/2 + k*pi reached while sweeping clockwise from angle_start.
    const double first = std::fmod(p.angle_start - kPi / 2, kPi);
    for (double s = first < 0 ? first + kPi : first; s < sweep; s += kPi) {
      if (s > 0.0) cuts.push_back(s);
    }
    cuts.push_back(sweep);
    auto at = [&](std::size_t k) {
      if (k == 0) return p.start;
      if (k + 1 == cuts.size()) return p.end;
      const double th = p.angle_start - cuts[k];
      return Point{p.center.x + p.arc_radius * std::cos(th), p.center.y + p.arc_radius * std::sin(th)};
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Point a = at(k), b = at(k + 1);
      if (!crosses(a, b)) continue;
      const double mid = p.angle_start - 0.5 * (cuts[k] + cuts[k + 1]);
      const double dy = q.y - p.center.y;
      const double dx = std::sqrt(std::max(0.0, p.arc_radius * p.arc_radius - dy * dy));
      const double x = p.center.x + (std::cos(mid) >= 0.0 ? dx : -dx);
      if (x > q.x) inside = !inside;
    }
  }
  return inside;
}

DiskIntersection trace_intersection(const SiteSet& sites, double r, const Point& inner) {
  DiskIntersection out;
  out.radius = r;
  out.point = inner;
  const StartCandidate start = start_point(sites, r, inner);
  if (start.site < 0) {
    out.full = true;
    return out;
  }
  Tracer tracer(sites, r);
  out.pieces = tracer.run(start.q, start.site);
  out.arcs = merge_pieces(out.pieces);
  return out;
}

DiskIntersection disks_intersection(const SiteSet& sites, double r) {
  if (r < 0.0 || !std::isfinite(r)) throw GeometryError(ErrorKind::NegativeRadius, "radius must be finite and non-negative");
  DiskIntersection out;
  out.radius = r;
  const SimplePolygon& poly = sites.domain().polygon();
  if (sites.size() == 0) {
    out.full = true;
    out.point = poly.vertex(0);
    return out;
  }
  bool full = true;
  for (int v = 0; v < poly.size() && full; ++v) {
    for (int s = 0; s < sites.size() && full; ++s) full = sites[s].map->vertex_distance(v) <= r;
  }
  const EnclosingBall ball = min_enclosing_ball(sites);
  out.point = ball.center;
  if (full) {
    out.full = true;
    return out;
  }
  const double tol = 1e-11 * (1.0 + r);
  if (ball.radius > r + tol) {
    out.empty = true;
    return out;
  }
  if (ball.radius >= r - tol) {
    out.single_point = true;
    return out;
  }
  return trace_intersection(sites, r, ball.center);
}

DiskIntersection disks_intersection(const PolygonDomain& dom, std::span<const int> vertices, double r) {
  SiteSet sites(dom);
  for (int v : vertices) sites.add_vertex(v);
  return disks_intersection(sites, r);
}

GeodesicDisk geodesic_disk(const PolygonDomain& dom, const Point& center, double r) {
  if (r < 0.0 || !std::isfinite(r)) throw GeometryError(ErrorKind::NegativeRadius, "radius must be finite and non-negative");
  dom.require_inside(center);
  SiteSet sites(dom);
  sites.add_point(center);
  GeodesicDisk out{center, r, {}};
  if (r == 0.0) {
    out.region.radius = 0.0;
    out.region.single_point = true;
    out.region.point = center;
    return out;
  }
  out.region = disks_intersection(sites, r);
  return out;
}

}  // namespace geocenter
