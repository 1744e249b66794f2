#include "geocenter/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "geocenter/predicates.hpp"

namespace geocenter {
namespace {

bool in_closed_cw_triangle(const Point& a, const Point& b, const Point& c, const Point& p) {
  return orientation(a, b, p) <= 0 && orientation(b, c, p) <= 0 && orientation(c, a, p) <= 0;
}

double segment_distance(const Point& a, const Point& b, const Point& p) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return dist(p, a + ab * t);
}

}  // namespace

Triangulation::Triangulation(const SimplePolygon& poly) : poly_(poly) {
  const int n = poly.size();
  std::vector<int> ring(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ring[i] = i;

  auto is_ear = [&](std::size_t k) {
    const std::size_t m = ring.size();
    const int ia = ring[(k + m - 1) % m];
    const int ib = ring[k];
    const int ic = ring[(k + 1) % m];
    const Point& a = poly.vertex(ia);
    const Point& b = poly.vertex(ib);
    const Point& c = poly.vertex(ic);
    if (orientation(a, b, c) >= 0) return false;
    for (std::size_t q = 0; q < m; ++q) {
      const int iv = ring[q];
      if (iv == ia || iv == ib || iv == ic) continue;
      if (in_closed_cw_triangle(a, b, c, poly.vertex(iv))) return false;
    }
    return true;
  };

  while (ring.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < ring.size(); ++k) {
      if (!is_ear(k)) continue;
      const std::size_t m = ring.size();
      triangles_.push_back({ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) throw std::runtime_error("triangulation failed: no ear found");
  }
  triangles_.push_back({ring[0], ring[1], ring[2]});

  const int nt = size();
  neighbors_.assign(static_cast<std::size_t>(nt), {-1, -1, -1});
  edge_triangle_.assign(static_cast<std::size_t>(n), -1);
  std::map<std::pair<int, int>, std::pair<int, int>> open;
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      if (poly.next(a) == b) {
        edge_triangle_[a] = t;
        continue;
      }
      const auto key = std::minmax(a, b);
      if (auto it = open.find(key); it != open.end()) {
        neighbors_[t][k] = it->second.first;
        neighbors_[it->second.first][it->second.second] = t;
        open.erase(it);
      } else {
        open[key] = {t, k};
      }
    }
  }

  parent_.assign(static_cast<std::size_t>(nt), -1);
  depth_.assign(static_cast<std::size_t>(nt), 0);
  std::vector<char> seen(static_cast<std::size_t>(nt), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    const int t = bfs.front();
    bfs.pop();
    for (int k = 0; k < 3; ++k) {
      const int u = neighbors_[t][k];
      if (u < 0 || seen[u]) continue;
      seen[u] = 1;
      parent_[u] = t;
      depth_[u] = depth_[t] + 1;
      bfs.push(u);
    }
  }
  build_grid();
}

void Triangulation::build_grid() {
  const Point lo = poly_.bbox_min();
  const Point hi = poly_.bbox_max();
  const int side = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(size())))));
  grid_w_ = grid_h_ = side;
  grid_lo_ = lo;
  cell_w_ = std::max((hi.x - lo.x) / grid_w_, 1e-300);
  cell_h_ = std::max((hi.y - lo.y) / grid_h_, 1e-300);
  grid_.assign(static_cast<std::size_t>(grid_w_ * grid_h_), {});
  for (int t = 0; t < size(); ++t) {
    Point tlo = corner(t, 0);
    Point thi = tlo;
    for (int k = 1; k < 3; ++k) {
      const Point c = corner(t, k);
      tlo = {std::min(tlo.x, c.x), std::min(tlo.y, c.y)};
      thi = {std::max(thi.x, c.x), std::max(thi.y, c.y)};
    }
    const int x0 = std::clamp(static_cast<int>(std::floor((tlo.x - lo.x) / cell_w_)), 0, grid_w_ - 1);
    const int x1 = std::clamp(static_cast<int>(std::floor((thi.x - lo.x) / cell_w_)), 0, grid_w_ - 1);
    const int y0 = std::clamp(static_cast<int>(std::floor((tlo.y - lo.y) / cell_h_)), 0, grid_h_ - 1);
    const int y1 = std::clamp(static_cast<int>(std::floor((thi.y - lo.y) / cell_h_)), 0, grid_h_ - 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) grid_[static_cast<std::size_t>(y * grid_w_ + x)].push_back(t);
    }
  }
}

bool Triangulation::contains(int t, const Point& p) const {
  return in_closed_cw_triangle(corner(t, 0), corner(t, 1), corner(t, 2), p);
}

int Triangulation::locate(const Point& p) const {
  const double fx = std::floor((p.x - grid_lo_.x) / cell_w_);
  const double fy = std::floor((p.y - grid_lo_.y) / cell_h_);
  if (fx >= -1.0 && fy >= -1.0 && fx <= grid_w_ && fy <= grid_h_) {
    const int x = std::clamp(static_cast<int>(fx), 0, grid_w_ - 1);
    const int y = std::clamp(static_cast<int>(fy), 0, grid_h_ - 1);
    for (int t : grid_[static_cast<std::size_t>(y * grid_w_ + x)]) {
      if (contains(t, p)) return t;
    }
  }
  for (int t = 0; t < size(); ++t) {
    if (contains(t, p)) return t;
  }
  return -1;
}

int Triangulation::locate_nearest(const Point& p) const {
  const int t = locate(p);
  if (t >= 0) return t;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int u = 0; u < size(); ++u) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (orientation(corner(u, k), corner(u, (k + 1) % 3), p) > 0) {
        d = std::max(d, segment_distance(corner(u, k), corner(u, (k + 1) % 3), p));
      }
    }
    if (d < best_d) {
      best_d = d;
      best = u;
    }
  }
  return best;
}

std::vector<int> Triangulation::dual_path(int a, int b) const {
  std::vector<int> up;
  std::vector<int> down;
  while (a != b) {
    if (depth_[a] >= depth_[b]) {
      up.push_back(a);
      a = parent_[a];
    } else {
      down.push_back(b);
      b = parent_[b];
    }
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

int Triangulation::shared_edge_index(int t, int u) const {
  for (int k = 0; k < 3; ++k) {
    if (neighbors_[t][k] == u) return k;
  }
  return -1;
}

}  // namespace geocenter
