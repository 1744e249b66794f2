#include "geocenter/path_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geocenter/predicates.hpp"

namespace geocenter {
namespace {

constexpr double kUnreached = std::numeric_limits<double>::infinity();

// True if q lies left of (or collinear beyond) the directed segment from->to.
bool turns_left_past(const Point& from, const Point& to, const Point& q) {
  const int o = orientation(from, to, q);
  if (o != 0) return o > 0;
  return dot(q - to, to - from) >= 0.0;
}

bool turns_right_past(const Point& from, const Point& to, const Point& q) {
  const int o = orientation(from, to, q);
  if (o != 0) return o < 0;
  return dot(q - to, to - from) >= 0.0;
}

std::vector<Point> clip_halfplane(const std::vector<Point>& poly, const Point& origin, const Point& dir,
                                  double sign) {
  // Keeps points with sign * cross(dir, q - origin) >= 0.
  std::vector<Point> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % m];
    const double da = sign * cross(dir, a - origin);
    const double db = sign * cross(dir, b - origin);
    if (da >= 0.0) out.push_back(a);
    if ((da >= 0.0) != (db >= 0.0)) out.push_back(lerp(a, b, da / (da - db)));
  }
  return out;
}

}  // namespace

bool Wedge::contains(const Point& q, double slack) const {
  const Point d = q - origin;
  if (has_left && cross(left_dir, d) > slack * norm(left_dir)) return false;
  if (has_right && cross(right_dir, d) < -slack * norm(right_dir)) return false;
  return true;
}

FunnelPropagator::FunnelPropagator(const Triangulation& tri, const Point& root)
    : tri_(&tri), root_(root) {
  const int n = tri.polygon().size();
  nodes_.resize(static_cast<std::size_t>(n) + 1);
  for (int v = 0; v < n; ++v) nodes_[v] = {tri.polygon().vertex(v), v, kUnreached, -1};
  nodes_[n] = {root, -1, 0.0, -1};
  root_tri_ = tri.locate_nearest(root);
  for (int k = 0; k < 3; ++k) {
    const int v = tri.triangle(root_tri_)[k];
    nodes_[v].dist = dist(nodes_[v].p, root);
    nodes_[v].parent = n;
  }
}

int FunnelPropagator::anchor_position(const Funnel& f, const Point& q) const {
  const int h = f.apex;
  const int k = static_cast<int>(f.chain.size()) - 1;
  auto at = [&](int s) -> const Point& { return nodes_[f.chain[s]].p; };
  if (h > 0 && turns_left_past(at(h), at(h - 1), q)) {
    int s = h - 1;
    while (s > 0 && turns_left_past(at(s), at(s - 1), q)) --s;
    return s;
  }
  if (h < k && turns_right_past(at(h), at(h + 1), q)) {
    int s = h + 1;
    while (s < k && turns_right_past(at(s), at(s + 1), q)) ++s;
    return s;
  }
  return h;
}

Wedge FunnelPropagator::wedge(const Funnel& f, int pos) const {
  const int h = f.apex;
  const int k = static_cast<int>(f.chain.size()) - 1;
  auto at = [&](int s) -> const Point& { return nodes_[f.chain[s]].p; };
  Wedge w;
  w.origin = at(pos);
  if (pos == h) {
    w.has_left = h > 0;
    if (w.has_left) w.left_dir = at(h - 1) - at(h);
    w.has_right = h < k;
    if (w.has_right) w.right_dir = at(h + 1) - at(h);
  } else if (pos < h) {
    w.has_left = pos > 0;
    if (w.has_left) w.left_dir = at(pos - 1) - at(pos);
    w.has_right = true;
    w.right_dir = at(pos) - at(pos + 1);
  } else {
    w.has_left = true;
    w.left_dir = at(pos) - at(pos - 1);
    w.has_right = pos < k;
    if (w.has_right) w.right_dir = at(pos + 1) - at(pos);
  }
  return w;
}

int FunnelPropagator::third_vertex(int t, const Funnel& f) const {
  const int a = nodes_[f.chain.front()].vertex;
  const int b = nodes_[f.chain.back()].vertex;
  for (int v : tri_->triangle(t)) {
    if (v != a && v != b) return v;
  }
  return -1;
}

void FunnelPropagator::reach(int vertex, const Funnel& f, int pos) {
  PathNode& nd = nodes_[vertex];
  if (nd.dist != kUnreached) return;
  const PathNode& from = nodes_[f.chain[pos]];
  nd.dist = from.dist + dist(from.p, nd.p);
  nd.parent = f.chain[pos];
}

Funnel FunnelPropagator::initial_funnel(int to) {
  const int k = tri_->shared_edge_index(root_tri_, to);
  int a = tri_->triangle(root_tri_)[k];
  int b = tri_->triangle(root_tri_)[(k + 1) % 3];
  int z = -1;
  for (int v : tri_->triangle(to)) {
    if (v != a && v != b) z = v;
  }
  const SimplePolygon& poly = tri_->polygon();
  if (orientation(poly.vertex(a), poly.vertex(b), poly.vertex(z)) < 0) std::swap(a, b);
  Funnel f;
  if (root_ == poly.vertex(a)) {
    f.chain = {a, b};
    f.apex = 0;
  } else if (root_ == poly.vertex(b)) {
    f.chain = {a, b};
    f.apex = 1;
  } else {
    f.chain = {a, root_node(), b};
    f.apex = 1;
  }
  return f;
}

Funnel FunnelPropagator::advance(const Funnel& f, int tri_index, int to) {
  const int c = third_vertex(tri_index, f);
  const int pos = anchor_position(f, nodes_[c].p);
  reach(c, f, pos);
  const int a = nodes_[f.chain.front()].vertex;
  bool toward_left = false;
  for (int k = 0; k < 3; ++k) {
    if (tri_->neighbor(tri_index, k) != to) continue;
    const int u = tri_->triangle(tri_index)[k];
    const int v = tri_->triangle(tri_index)[(k + 1) % 3];
    toward_left = (u == a || v == a);
  }
  Funnel out;
  if (toward_left) {
    out.chain.assign(f.chain.begin(), f.chain.begin() + pos + 1);
    out.chain.push_back(c);
    out.apex = std::min(f.apex, pos);
  } else {
    out.chain.reserve(f.chain.size() - static_cast<std::size_t>(pos) + 1);
    out.chain.push_back(c);
    out.chain.insert(out.chain.end(), f.chain.begin() + pos, f.chain.end());
    out.apex = std::max(f.apex, pos) - pos + 1;
  }
  return out;
}

Funnel FunnelPropagator::walk_to(int target) {
  if (target == root_tri_) return Funnel{{root_node()}, 0};
  const std::vector<int> path = tri_->dual_path(root_tri_, target);
  Funnel f = initial_funnel(path[1]);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) f = advance(f, path[i], path[i + 1]);
  return f;
}

ShortestPathMap::ShortestPathMap(const Triangulation& tri, const Point& root)
    : FunnelPropagator(tri, root) {
  funnels_.resize(static_cast<std::size_t>(tri.size()));
  funnels_[root_tri_] = Funnel{{root_node()}, 0};
  std::vector<std::pair<int, int>> stack;  // (triangle, entered from)
  for (int k = 0; k < 3; ++k) {
    const int u = tri.neighbor(root_tri_, k);
    if (u < 0) continue;
    funnels_[u] = initial_funnel(u);
    stack.emplace_back(u, root_tri_);
  }
  while (!stack.empty()) {
    const auto [t, from] = stack.back();
    stack.pop_back();
    const int c = third_vertex(t, funnels_[t]);
    reach(c, funnels_[t], anchor_position(funnels_[t], nodes_[c].p));
    for (int k = 0; k < 3; ++k) {
      const int u = tri.neighbor(t, k);
      if (u < 0 || u == from) continue;
      funnels_[u] = advance(funnels_[t], t, u);
      stack.emplace_back(u, t);
    }
  }
}

ShortestPathMap::Location ShortestPathMap::locate_in(int t, const Point& q) const {
  if (t == root_tri_) return {t, root_node()};
  const Funnel& f = funnels_[t];
  return {t, f.chain[anchor_position(f, q)]};
}

ShortestPathMap::Location ShortestPathMap::locate(const Point& q) const {
  return locate_in(tri_->locate_nearest(q), q);
}

double ShortestPathMap::distance_in(int t, const Point& q) const {
  const PathNode& nd = nodes_[locate_in(t, q).node];
  return nd.dist + dist(nd.p, q);
}

double ShortestPathMap::distance(const Point& q) const {
  return distance_in(tri_->locate_nearest(q), q);
}

std::vector<int> ShortestPathMap::vertices_to(int node_id) const {
  std::vector<int> out;
  for (int id = node_id; id >= 0; id = nodes_[id].parent) {
    if (nodes_[id].vertex >= 0) out.push_back(nodes_[id].vertex);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<ShortestPathMap::Cell> ShortestPathMap::cells() const {
  std::vector<Cell> out;
  for (int t = 0; t < tri_->size(); ++t) {
    const std::vector<Point> tri_poly{tri_->corner(t, 0), tri_->corner(t, 1), tri_->corner(t, 2)};
    if (t == root_tri_) {
      out.push_back({t, root_node(), tri_poly});
      continue;
    }
    const Funnel& f = funnels_[t];
    for (int pos = 0; pos < static_cast<int>(f.chain.size()); ++pos) {
      const Wedge w = wedge(f, pos);
      std::vector<Point> region = tri_poly;
      if (w.has_left) region = clip_halfplane(region, w.origin, w.left_dir, -1.0);
      if (w.has_right && region.size() >= 3) region = clip_halfplane(region, w.origin, w.right_dir, 1.0);
      if (region.size() < 3) continue;
      double area = 0.0;
      for (std::size_t i = 0; i < region.size(); ++i) area += cross(region[i], region[(i + 1) % region.size()]);
      if (std::fabs(area) < 1e-18) continue;
      out.push_back({t, f.chain[pos], std::move(region)});
    }
  }
  return out;
}

std::vector<EdgeProfilePiece> edge_profile(const Triangulation& tri, const Point& source, int edge) {
  FunnelPropagator fp(tri, source);
  return edge_profile(fp, edge);
}

std::vector<EdgeProfilePiece> edge_profile(FunnelPropagator& fp, int edge) {
  const Triangulation& tri = fp.triangulation();
  const int target = tri.edge_triangle(edge);
  const Funnel f = fp.walk_to(target);
  const Point a = tri.polygon().vertex(edge);
  const Point b = tri.polygon().vertex(edge + 1);
  const Point ab = b - a;
  std::vector<double> cuts{0.0, 1.0};
  if (target != fp.root_triangle()) {
    for (int pos = 0; pos < static_cast<int>(f.chain.size()); ++pos) {
      const Wedge w = fp.wedge(f, pos);
      for (int side = 0; side < 2; ++side) {
        if (side == 0 && !w.has_left) continue;
        if (side == 1 && !w.has_right) continue;
        const Point d = side == 0 ? w.left_dir : w.right_dir;
        const double den = cross(ab, d);
        if (den == 0.0) continue;
        const double t = cross(w.origin - a, d) / den;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<EdgeProfilePiece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    int node = fp.root_node();
    if (target != fp.root_triangle()) node = f.chain[fp.anchor_position(f, a + ab * mid)];
    const PathNode& nd = fp.node(node);
    if (!out.empty() && out.back().anchor_vertex == nd.vertex) {
      out.back().t1 = cuts[i + 1];
      continue;
    }
    out.push_back({cuts[i], cuts[i + 1], nd.p, nd.dist, nd.vertex});
  }
  return out;
}

double profile_distance(const SimplePolygon& poly, int edge, std::span<const EdgeProfilePiece> profile,
                        double t) {
  const Point p = lerp(poly.vertex(edge), poly.vertex(edge + 1), t);
  for (const EdgeProfilePiece& piece : profile) {
    if (t <= piece.t1 || &piece == &profile.back()) return piece.anchor_dist + dist(piece.anchor, p);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace geocenter
