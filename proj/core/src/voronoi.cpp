#include "geocenter/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "geocenter/bisector.hpp"

namespace geocenter {
namespace {

double scale_of(const SimplePolygon& poly) { return std::max(dist(poly.bbox_min(), poly.bbox_max()), 1e-300); }

std::vector<int> incident_sites(const SiteSet& sites, const Point& q, double* rho) {
  const double f = sites.max_distance(q);
  const double tol = 1e-7 * (1.0 + f);
  std::vector<int> out;
  for (int s = 0; s < sites.size(); ++s) {
    if (sites.distance(s, q) >= f - tol) out.push_back(s);
  }
  *rho = f;
  return out;
}

// Argmax site along the boundary, as maximal runs between breakpoints.
struct BoundaryRun {
  int site = -1;
  double from = 0.0;  // boundary positions in [0, n)
  double to = 0.0;
};

class BoundarySweep {
 public:
  explicit BoundarySweep(const SiteSet& sites) : s_(sites), poly_(sites.domain().polygon()) {}

  int argmax(double pos) const {
    int a = -1;
    s_.max_distance(at(pos), &a);
    return a;
  }

  Point at(double pos) const {
    const int n = poly_.size();
    pos = std::fmod(pos, static_cast<double>(n));
    if (pos < 0.0) pos += n;
    const int e = std::min(static_cast<int>(pos), n - 1);
    return poly_.point_at({e, pos - e});
  }

  // Breakpoints (position, site before, site after) in increasing position.
  std::vector<BoundaryRun> runs(int samples_per_edge) const {
    const int n = poly_.size();
    std::vector<BoundaryRun> out;
    int cur = argmax(0.0);
    double start = 0.0;
    for (int e = 0; e < n; ++e) {
      for (int k = 1; k <= samples_per_edge; ++k) {
        const double hi_pos = e + static_cast<double>(k) / samples_per_edge;
        double lo = e + static_cast<double>(k - 1) / samples_per_edge;
        // Repeatedly locate the next change of argmax inside (lo, hi_pos].
        while (argmax(hi_pos) != cur) {
          double a = lo, b = hi_pos;
          for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (a + b);
            (argmax(mid) == cur ? a : b) = mid;
          }
          out.push_back({cur, start, b});
          start = b;
          cur = argmax(b);
          lo = b;
          if (b >= hi_pos) break;
        }
      }
    }
    if (!out.empty() && out.front().site == cur) {
      out.front().from = start - n;
    } else {
      out.push_back({cur, start, static_cast<double>(n)});
    }
    return out;
  }

 private:
  const SiteSet& s_;
  const SimplePolygon& poly_;
};

// Sutherland-Hodgman clip of a ring by a convex clockwise polygon.
std::vector<Point> clip(std::vector<Point> subject, std::span<const Point> convex) {
  const std::size_t m = convex.size();
  for (std::size_t k = 0; k < m && !subject.empty(); ++k) {
    const Point a = convex[k], b = convex[(k + 1) % m];
    auto inside = [&](const Point& p) { return cross(b - a, p - a) <= 0.0; };
    std::vector<Point> out;
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Point p = subject[i], q = subject[(i + 1) % subject.size()];
      const bool pin = inside(p), qin = inside(q);
      if (pin) out.push_back(p);
      if (pin != qin) {
        const double dp = cross(b - a, p - a), dq = cross(b - a, q - a);
        out.push_back(lerp(p, q, dp / (dp - dq)));
      }
    }
    subject = std::move(out);
  }
  return subject;
}

double ring_area(std::span<const Point> ring) {
  double a = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) a += cross(ring[i], ring[(i + 1) % ring.size()]);
  return 0.5 * a;
}

}  // namespace

bool ring_contains(std::span<const Point> ring, const Point& q) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point& a = ring[i];
    const Point& b = ring[j];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > q.x) inside = !inside;
    }
  }
  return inside;
}

int FarthestVoronoi::site_at(const Point& q) const {
  int a = -1;
  sites_->max_distance(q, &a);
  return a;
}

int FarthestVoronoi::cell_at(const Point& q) const {
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (ring_contains(cells_[c].region, q)) return static_cast<int>(c);
  }
  return -1;
}

std::vector<double> FarthestVoronoi::vertex_distances() const {
  std::vector<double> out;
  for (const VoronoiVertex& v : vertices_) out.push_back(v.dist);
  return out;
}

FarthestVoronoi farthest_voronoi(const PolygonDomain& dom, std::span<const int> vertices) {
  auto owned = std::make_shared<SiteSet>(dom);
  for (int v : vertices) owned->add_vertex(v);
  FarthestVoronoi out = farthest_voronoi(*owned);
  out.owned_ = owned;
  return out;
}

FarthestVoronoi farthest_voronoi(const SiteSet& sites) {
  FarthestVoronoi out;
  out.sites_ = &sites;
  const PolygonDomain& dom = sites.domain();
  const SimplePolygon& poly = dom.polygon();
  const Triangulation& tri = dom.triangulation();
  const double scale = scale_of(poly);
  const int m = sites.size();
  for (int s = 0; s < m; ++s) out.site_vertices_.push_back(sites[s].vertex);
  out.site_cells_.assign(static_cast<std::size_t>(m), {});
  if (m == 0) return out;

  // Leaves of the skeleton: breakpoints of the farthest site along the boundary.
  const BoundarySweep sweep(sites);
  const std::vector<BoundaryRun> runs = m > 1 ? sweep.runs(48) : std::vector<BoundaryRun>{};
  std::vector<VoronoiVertex>& verts = out.vertices_;
  std::vector<VoronoiEdge>& edges = out.edges_;
  const double merge_tol = 1e-7 * scale;
  auto find_or_add = [&](const Point& q, bool on_boundary) {
    for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
      if (dist(verts[v].p, q) <= merge_tol) {
        verts[v].on_boundary = verts[v].on_boundary || on_boundary;
        return v;
      }
    }
    VoronoiVertex v;
    v.p = q;
    v.on_boundary = on_boundary || dist(q, poly.point_at(project_to_boundary(poly, q))) <= merge_tol;
    v.sites = incident_sites(sites, q, &v.dist);
    if (v.on_boundary) v.coord = poly.canonical(project_to_boundary(poly, q));
    verts.push_back(v);
    return static_cast<int>(verts.size()) - 1;
  };

  struct Task {
    int vertex;
    int a;
    int b;
    Point dir;
  };
  std::vector<Task> tasks;
  if (runs.size() > 1) {
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const BoundaryRun& r = runs[k];
      const BoundaryRun& nx = runs[(k + 1) % runs.size()];
      const Point q = sweep.at(r.to);
      const int v = find_or_add(q, true);
      const BoundaryCoord bc = poly.canonical(project_to_boundary(poly, q));
      const Point ed = poly.vertex(bc.edge + 1) - poly.vertex(bc.edge);
      tasks.push_back({v, std::min(r.site, nx.site), std::max(r.site, nx.site), Point{ed.y, -ed.x}});
    }
  }

  const double h = 4e-3 * scale;
  auto unit = [](const Point& d) { return d / std::max(norm(d), 1e-300); };
  auto has_edge = [&](int v, int a, int b, const Point& dir) {
    for (const VoronoiEdge& e : edges) {
      if (e.sites.size() < 2 || e.sites[0] != a || e.sites[1] != b) continue;
      if (e.from == v && dot(unit(e.points[1] - e.points[0]), unit(dir)) > 0.5) return true;
      const std::size_t k = e.points.size();
      if (e.to == v && dot(unit(e.points[k - 2] - e.points[k - 1]), unit(dir)) > 0.5) return true;
    }
    return false;
  };
  // Largest distance over sites other than a and b.
  auto rival = [&](const Point& q, int a, int b, int* arg) {
    const int t = tri.locate_nearest(q);
    double best = -1.0;
    for (int s = 0; s < m; ++s) {
      if (s == a || s == b) continue;
      const double d = sites[s].map->distance_in(t, q);
      if (d > best) {
        best = d;
        *arg = s;
      }
    }
    return best;
  };

  for (std::size_t ti = 0; ti < tasks.size() && ti < 20000; ++ti) {
    const Task task = tasks[ti];
    if (has_edge(task.vertex, task.a, task.b, task.dir)) continue;
    const Site& sa = sites[task.a];
    const Site& sb = sites[task.b];
    std::vector<Point> pts{verts[task.vertex].p};
    Point q = pts[0], dir = task.dir;
    int end = -1;
    const int max_steps = static_cast<int>(8.0 * scale / h) + 100;
    for (int step = 0; step < max_steps && end < 0; ++step) {
      Point next;
      const LevelStep st = level_step(sa, sb, q, dir, h, &next);
      if (st == LevelStep::Flat) break;
      int c = -1;
      const double dc = m > 2 ? rival(next, task.a, task.b, &c) : -1.0;
      const double da = sa.map->distance(next);
      if (c >= 0 && dc > da + 1e-12 * (1.0 + da)) {
        // A third site takes over between q and next.
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 60; ++i) {
          const double mid = 0.5 * (lo + hi);
          const Point p = lerp(q, next, mid);
          int c2 = -1;
          (rival(p, task.a, task.b, &c2) > sa.map->distance(p) ? hi : lo) = mid;
        }
        Point at = lerp(q, next, hi);
        rival(at, task.a, task.b, &c);
        if (const auto e = equidistant_point(tri, sa, sb, sites[c], at); e && dist(e->q, at) <= 4.0 * h) at = e->q;
        end = find_or_add(at, false);
        if (end != task.vertex) pts.push_back(verts[end].p);
        break;
      }
      if (st == LevelStep::Boundary) {
        end = find_or_add(next, true);
        if (end != task.vertex) pts.push_back(verts[end].p);
        break;
      }
      pts.push_back(next);
      dir = next - q;
      q = next;
    }
    if (end < 0 || end == task.vertex || pts.size() < 2) continue;
    VoronoiEdge e;
    e.from = task.vertex;
    e.to = end;
    e.sites = {task.a, task.b};
    e.points = std::move(pts);
    edges.push_back(std::move(e));
    // Outgoing edges of a newly reached interior vertex.
    const VoronoiVertex& ve = verts[end];
    if (ve.on_boundary || ve.sites.size() < 3) continue;
    const double probe = 1e-5 * scale;
    for (std::size_t i = 0; i < ve.sites.size(); ++i) {
      for (std::size_t j = i + 1; j < ve.sites.size(); ++j) {
        const int x = ve.sites[i], y = ve.sites[j];
        for (double sign : {1.0, -1.0}) {
          const int t = tri.locate_nearest(ve.p);
          const LevelGradient g = level_gradient(sites[x], sites[y], ve.p, t);
          if (norm(g.grad) < 1e-9) continue;
          const Point d = perp(g.grad) * sign;
          Point p;
          if (level_step(sites[x], sites[y], ve.p, d, probe, &p) != LevelStep::Ok) continue;
          int c = -1;
          const double dc = rival(p, x, y, &c);
          if (c >= 0 && dc >= sites[x].map->distance(p) - 1e-9 * scale) continue;
          tasks.push_back({end, x, y, p - ve.p});
        }
      }
    }
  }
  const int nv = static_cast<int>(verts.size());

  // Site cells: the boundary run of the site closed by the skeleton path.
  if (m == 1) {
    out.site_cells_[0] = std::vector<Point>(poly.vertices().begin(), poly.vertices().end());
  }
  auto vertex_near = [&](const Point& q) {
    int best = -1;
    double bd = merge_tol * 10.0;
    for (int v = 0; v < nv; ++v) {
      if (dist(out.vertices_[v].p, q) <= bd) {
        bd = dist(out.vertices_[v].p, q);
        best = v;
      }
    }
    return best;
  };
  for (const BoundaryRun& r : runs) {
    if (runs.size() < 2) {
      out.site_cells_[r.site] = std::vector<Point>(poly.vertices().begin(), poly.vertices().end());
      continue;
    }
    std::vector<Point> ring{sweep.at(r.from)};
    for (int k = static_cast<int>(std::floor(r.from)) + 1; k <= static_cast<int>(std::ceil(r.to)) - 1; ++k) {
      ring.push_back(poly.vertex(k));
    }
    ring.push_back(sweep.at(r.to));
    const int vs = vertex_near(sweep.at(r.to));
    const int vt = vertex_near(sweep.at(r.from));
    if (vs >= 0 && vt >= 0) {
      // Breadth-first search over edges carrying the site.
      std::vector<int> prev_edge(static_cast<std::size_t>(nv), -1);
      std::vector<bool> seen(static_cast<std::size_t>(nv), false);
      std::queue<int> bfs;
      bfs.push(vs);
      seen[vs] = true;
      while (!bfs.empty()) {
        const int v = bfs.front();
        bfs.pop();
        for (int ei = 0; ei < static_cast<int>(out.edges_.size()); ++ei) {
          const VoronoiEdge& e = out.edges_[ei];
          if (!std::binary_search(e.sites.begin(), e.sites.end(), r.site)) continue;
          const int other = e.from == v ? e.to : (e.to == v ? e.from : -1);
          if (other < 0 || seen[other]) continue;
          seen[other] = true;
          prev_edge[other] = ei;
          bfs.push(other);
        }
      }
      if (seen[vt]) {
        std::vector<int> path;
        for (int v = vt; v != vs;) {
          const VoronoiEdge& e = out.edges_[prev_edge[v]];
          path.push_back(prev_edge[v]);
          v = e.from == v ? e.to : e.from;
        }
        std::reverse(path.begin(), path.end());
        int v = vs;
        for (int ei : path) {
          const VoronoiEdge& e = out.edges_[ei];
          if (e.from == v) {
            ring.insert(ring.end(), e.points.begin() + 1, e.points.end());
            v = e.to;
          } else {
            ring.insert(ring.end(), e.points.rbegin() + 1, e.points.rend());
            v = e.from;
          }
        }
        if (!ring.empty()) ring.pop_back();  // closes on the first point
      }
    }
    out.site_cells_[r.site] = std::move(ring);
  }

  // Refine every cell by its site's shortest path map cells.
  for (int s = 0; s < m; ++s) {
    const std::vector<Point>& cell = out.site_cells_[s];
    if (cell.size() < 3) continue;
    for (const ShortestPathMap::Cell& c : sites[s].map->cells()) {
      std::vector<Point> piece = clip(cell, c.region);
      if (piece.size() < 3 || std::abs(ring_area(piece)) <= 1e-14 * scale * scale) continue;
      RefinedCell rc;
      rc.site = s;
      rc.anchor_node = c.apex;
      rc.anchor_vertex = sites[s].map->node(c.apex).vertex;
      rc.triangle = c.triangle;
      rc.region = std::move(piece);
      out.cells_.push_back(std::move(rc));
    }
  }
  return out;
}

}  // namespace geocenter
