#include "geocenter/twocenter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "geocenter/errors.hpp"
#include "geocenter/predicates.hpp"

namespace geocenter {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-12;
constexpr double kMonoTol = 1e-9;
constexpr int kBoundarySamples = 160;
constexpr int kMaxRefinements = 4;

// Vertices a, a+1, ..., b clockwise; for a == b either just a or the whole
// boundary starting at a.
std::vector<int> cw_range(int n, int a, int b, bool wrap) {
  std::vector<int> out{a};
  if (a == b && !wrap) return out;
  for (int v = (a + 1) % n; v != b; v = (v + 1) % n) out.push_back(v);
  if (b != a) out.push_back(b);
  return out;
}

bool segment_inside(const SimplePolygon& poly, const Point& p, const Point& q) {
  for (int e = 0; e < poly.size(); ++e) {
    if (segments_cross_properly(p, q, poly.vertex(e), poly.vertex(e + 1))) return false;
  }
  return point_in_polygon(poly, lerp(p, q, 0.5)) != Containment::Outside;
}

// Points of edge e where extensions of shortest path tree edges of its two
// endpoints, continued past the parent, meet the edge.
std::vector<double> edge_breakpoints(const PolygonDomain& dom, int e) {
  const SimplePolygon& poly = dom.polygon();
  const Point a = poly.vertex(e);
  const Point ab = poly.vertex(e + 1) - a;
  std::vector<double> cuts{0.0, 1.0};
  for (int root : {e, e + 1}) {
    const ShortestPathMap& m = dom.vertex_map(root);
    for (int c = 0; c < poly.size(); ++c) {
      const PathNode& nd = m.node(c);
      if (nd.parent < 0 || nd.parent == m.root_node()) continue;
      const Point par = m.node(nd.parent).p;
      const Point d = par - nd.p;
      const double den = cross(ab, d);
      if (std::abs(den) <= 1e-14 * norm(ab) * norm(d)) continue;
      const double t = cross(par - a, d) / den;
      const double s = cross(par - a, ab) / den;
      if (t <= 1e-12 || t >= 1.0 - 1e-12 || s <= 0.0) continue;
      if (!segment_inside(poly, par, a + ab * t)) continue;
      cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-12; }),
             cuts.end());
  return cuts;
}

double profile_at(const SimplePolygon& poly, int edge, const EdgeProfilePiece& pc, double t) {
  return pc.anchor_dist + dist(pc.anchor, lerp(poly.vertex(edge), poly.vertex(edge + 1), t));
}

// Where the distance along one profile piece equals r; `first` picks the
// entering root.
double piece_crossing(const SimplePolygon& poly, int edge, const EdgeProfilePiece& pc, double r,
                      bool first) {
  const double rho = r - pc.anchor_dist;
  if (rho < 0.0) return first ? pc.t1 : pc.t0;
  const Point a = poly.vertex(edge);
  const Point e = poly.vertex(edge + 1) - a;
  const Point w = a - pc.anchor;
  const double c2 = dot(e, e);
  const double c1 = 2.0 * dot(w, e);
  const double c0 = dot(w, w) - rho * rho;
  const double disc = std::max(0.0, c1 * c1 - 4.0 * c2 * c0);
  const double sq = std::sqrt(disc);
  const double t = first ? (-c1 - sq) / (2.0 * c2) : (-c1 + sq) / (2.0 * c2);
  return std::clamp(t, pc.t0, pc.t1);
}

// Parameter where the (convex) distance along the edge is smallest.
double closest_param(const SimplePolygon& poly, int edge, std::span<const EdgeProfilePiece> prof) {
  const Point a = poly.vertex(edge);
  const Point e = poly.vertex(edge + 1) - a;
  double best_t = 0.0, best_d = kInf;
  for (const EdgeProfilePiece& pc : prof) {
    const double t = std::clamp(dot(pc.anchor - a, e) / dot(e, e), pc.t0, pc.t1);
    const double d = profile_at(poly, edge, pc, t);
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  return best_t;
}

// Covered parameters form an interval around the closest point; when even
// that point is out of reach, `fallback` is returned.
double lowest_covered(const SimplePolygon& poly, int edge, std::span<const EdgeProfilePiece> prof,
                      double r, double fallback) {
  if (profile_at(poly, edge, prof.front(), 0.0) <= r) return 0.0;
  const double tm = closest_param(poly, edge, prof);
  for (const EdgeProfilePiece& pc : prof) {
    if (pc.t0 > tm) break;
    const double hi = std::min(pc.t1, tm);
    if (profile_at(poly, edge, pc, hi) <= r) {
      EdgeProfilePiece cut = pc;
      cut.t1 = hi;
      return piece_crossing(poly, edge, cut, r, true);
    }
  }
  return fallback;
}

double highest_covered(const SimplePolygon& poly, int edge, std::span<const EdgeProfilePiece> prof,
                       double r, double fallback) {
  if (profile_at(poly, edge, prof.back(), 1.0) <= r) return 1.0;
  const double tm = closest_param(poly, edge, prof);
  for (auto it = prof.rbegin(); it != prof.rend(); ++it) {
    if (it->t1 < tm) break;
    const double lo = std::max(it->t0, tm);
    if (profile_at(poly, edge, *it, lo) <= r) {
      EdgeProfilePiece cut = *it;
      cut.t0 = lo;
      return piece_crossing(poly, edge, cut, r, false);
    }
  }
  return fallback;
}

int subedge_of(std::span<const double> breaks, double t) {
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  const int k = static_cast<int>(it - breaks.begin()) - 1;
  return std::clamp(k, 0, static_cast<int>(breaks.size()) - 2);
}

double full_radius(const PolygonDomain& dom) {
  SiteSet sites(dom);
  for (int v = 0; v < dom.size(); ++v) sites.add_vertex(v);
  return min_enclosing_ball(sites).radius;
}

// Both events lie on one connected circular stretch of the boundary.
bool contiguous(const CoverageProfile& prof, const CoverageEvent& e, const CoverageEvent& f) {
  if (e.arc < 0 || f.arc < 0) return false;
  const int m = static_cast<int>(prof.arcs.size());
  if (e.arc == f.arc && f.frac > e.frac) return true;
  return f.arc == (e.arc + 1) % m && f.frac == 0.0 && e.frac < 1.0 && prof.arcs[e.arc].circular &&
         prof.arcs[f.arc].circular;
}

// Walkable neighborhood of an event: up to two stretches, to the previous and
// to the next event, parametrized by lambda in [0, size()].
struct LocalPath {
  struct Seg {
    int arc;
    double f0;
    double f1;
  };
  std::vector<Seg> segs;
  Point fixed;

  double length() const { return static_cast<double>(segs.size()); }
  std::pair<int, Point> at(const CoverageProfile& prof, double lambda) const {
    if (segs.empty()) return {-1, fixed};
    const int s = std::clamp(static_cast<int>(std::floor(lambda)), 0, static_cast<int>(segs.size()) - 1);
    const double u = std::clamp(lambda - s, 0.0, 1.0);
    const Seg& g = segs[s];
    return {g.arc, prof.arcs[g.arc].point_at(g.f0 + (g.f1 - g.f0) * u)};
  }
};

LocalPath local_path(const CoverageProfile& prof, int k) {
  LocalPath path;
  const int m = static_cast<int>(prof.events.size());
  const CoverageEvent& e = prof.events[k];
  path.fixed = e.p;
  if (m < 2) return path;
  const CoverageEvent& prev = prof.events[(k + m - 1) % m];
  const CoverageEvent& next = prof.events[(k + 1) % m];
  if (contiguous(prof, prev, e)) {
    path.segs.push_back({prev.arc, prev.frac, prev.arc == e.arc ? e.frac : 1.0});
  }
  if (contiguous(prof, e, next)) {
    path.segs.push_back({e.arc, e.frac, next.arc == e.arc ? next.frac : 1.0});
  }
  return path;
}

int count_inversions(std::span<const double> v) {
  int up = 0, down = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1] + kMonoTol) ++up;
    if (v[k] < v[k - 1] - kMonoTol) ++down;
  }
  return std::min(up, down);
}

// Running maximum that only absorbs dips of at most the monotonicity
// tolerance; larger dips are kept so they show up downstream.
std::vector<double> tie_envelope(std::vector<double> v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < v[k - 1] && v[k - 1] - v[k] <= kMonoTol) v[k] = v[k - 1];
  }
  return v;
}

// Fractional index of the first entry >= a (size() if none).
double first_at_least(std::span<const double> g, double a) {
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] >= a) {
      if (k == 0) return 0.0;
      return static_cast<double>(k - 1) + (a - g[k - 1]) / (g[k] - g[k - 1]);
    }
  }
  return static_cast<double>(g.size());
}

// Fractional index of the last entry <= b (-1 if none).
double last_at_most(std::span<const double> g, double b) {
  for (std::size_t k = g.size(); k-- > 0;) {
    if (g[k] <= b) {
      if (k + 1 == g.size()) return static_cast<double>(k);
      return static_cast<double>(k) + (b - g[k]) / (g[k + 1] - g[k]);
    }
  }
  return -1.0;
}

// Records mu_1 / mu_2 along a pair of subchains where both coverage
// functions rise together on each side, and counts decreasing steps.
void mu_check(const CoverageProfile& p1, std::vector<int> a, const CoverageProfile& p2,
              std::vector<int> b, DecisionStats& stats) {
  auto orient = [](const CoverageProfile& p, std::vector<int>& idx) {
    const double d_phi = p.events[idx.back()].phi - p.events[idx.front()].phi;
    const double d_psi = p.events[idx.back()].psi - p.events[idx.front()].psi;
    if (d_phi < 0.0 || (d_phi == 0.0 && d_psi < 0.0)) std::reverse(idx.begin(), idx.end());
    return p.events[idx.back()].psi >= p.events[idx.front()].psi;
  };
  if (!orient(p1, a) || !orient(p2, b)) return;
  auto values = [](const CoverageProfile& p, const std::vector<int>& idx, bool phi) {
    std::vector<double> v;
    for (int k : idx) v.push_back(phi ? p.events[k].phi : p.events[k].psi);
    return tie_envelope(std::move(v));
  };
  const std::vector<double> phi1 = values(p1, a, true), psi1 = values(p1, a, false);
  const std::vector<double> phi2 = values(p2, b, true), psi2 = values(p2, b, false);
  ++stats.mu_sequences;
  double prev1 = -kInf, prev2 = -kInf;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double mu1 = first_at_least(phi2, phi1[k]);
    const double mu2 = last_at_most(psi2, psi1[k]);
    if (mu1 < prev1 || mu2 < prev2) ++stats.mu_inversions;
    prev1 = mu1;
    prev2 = mu2;
  }
}

// Best partner on side 2 for fixed side-1 coverage (a, b): the objective
// min(phi2 - a, b - psi2) peaks at an end of the path or where
// phi2 + psi2 = a + b.
struct Partner {
  double value = -kInf;
  int arc = -1;
  Point y;
  Coverage cov;
};

class PartnerSearch {
 public:
  PartnerSearch(const DecisionContext& ctx, const CoverageProfile& prof, int k, double r)
      : ctx_(&ctx), prof_(&prof), path_(local_path(prof, k)), r_(r) {
    const int nodes = static_cast<int>(path_.length()) + 1;
    for (int s = 0; s < nodes; ++s) nodes_.push_back(eval(static_cast<double>(s)));
  }

  Partner best(double a, double b) const {
    Partner out;
    auto consider = [&](const Node& nd) {
      const double v = std::min(nd.cov.phi - a, b - nd.cov.psi);
      if (v > out.value) out = {v, nd.arc, nd.y, nd.cov};
    };
    for (const Node& nd : nodes_) consider(nd);
    for (std::size_t s = 0; s + 1 < nodes_.size(); ++s) {
      double lo = static_cast<double>(s), hi = lo + 1.0;
      double f_lo = nodes_[s].cov.phi + nodes_[s].cov.psi - a - b;
      double f_hi = nodes_[s + 1].cov.phi + nodes_[s + 1].cov.psi - a - b;
      if (f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) == (f_hi < 0.0)) continue;
      // Illinois variant of regula falsi.
      int side = 0;
      Node mid = nodes_[s];
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        mid = eval(x);
        const double fx = mid.cov.phi + mid.cov.psi - a - b;
        if (fx == 0.0) break;
        if ((fx < 0.0) == (f_lo < 0.0)) {
          lo = x;
          f_lo = fx;
          if (side == -1) f_hi *= 0.5;
          side = -1;
        } else {
          hi = x;
          f_hi = fx;
          if (side == 1) f_lo *= 0.5;
          side = 1;
        }
      }
      consider(mid);
    }
    return out;
  }

 private:
  struct Node {
    int arc;
    Point y;
    Coverage cov;
  };
  Node eval(double lambda) const {
    const auto [arc, y] = path_.at(*prof_, lambda);
    return {arc, y, ctx_->coverage(2, y, r_)};
  }

  const DecisionContext* ctx_;
  const CoverageProfile* prof_;
  LocalPath path_;
  double r_;
  std::vector<Node> nodes_;
};

struct Candidate {
  double value = -kInf;
  int arc1 = -1;
  Point x;
  Coverage cx;
  Partner partner;
};

// Continuous search around events k1 (side 1) and k2 (side 2): golden
// section along each side-1 stretch, exact partner search on side 2.
Candidate refine_pair(const DecisionContext& ctx, const CoverageProfile& p1, int k1,
                      const CoverageProfile& p2, int k2, double r) {
  const PartnerSearch partners(ctx, p2, k2, r);
  const LocalPath path = local_path(p1, k1);
  Candidate best;
  auto eval = [&](double lambda) {
    const auto [arc, x] = path.at(p1, lambda);
    const Coverage cx = ctx.coverage(1, x, r);
    const Partner pt = partners.best(cx.phi, cx.psi);
    if (pt.value > best.value) best = {pt.value, arc, x, cx, pt};
    return pt.value;
  };
  eval(0.0);
  if (path.segs.empty()) return best;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t s = 0; s < path.segs.size(); ++s) {
    double lo = static_cast<double>(s), hi = lo + 1.0;
    eval(hi);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 36 && best.value < -kFeasTol; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = eval(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = eval(x1);
      }
    }
    if (best.value >= -kFeasTol) break;
  }
  return best;
}

Witness make_witness(const DecisionContext& ctx, const Point& c1, const Coverage& cov1, int arc1,
                     const Point& c2, const Coverage& cov2, int arc2) {
  const CandidatePair& pr = ctx.pair();
  const double a = std::clamp(0.5 * (cov1.phi + cov2.phi), 0.0, 1.0);
  const double b = std::clamp(0.5 * (cov1.psi + cov2.psi), 0.0, 1.0);
  Witness w;
  w.c1 = c1;
  w.c2 = c2;
  w.alpha = {pr.i, a};
  w.beta = {pr.j, b};
  w.cell = {arc1, arc2, ctx.subedge_i(a), ctx.subedge_j(b)};
  return w;
}

double geodesic_to(const PolygonDomain& dom, const Point& c, const BoundaryCoord& b) {
  return geodesic_distance(dom, c, dom.polygon().point_at(b));
}

}  // namespace

// ---------------------------------------------------------------------------

ChainRadii::ChainRadii(const PolygonDomain& dom) : dom_(&dom) {
  const int n = dom.size();
  cache_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) single_.push_back({0.0, dom.polygon().vertex(v)});
}

const ChainBall& ChainRadii::ball(int a, int b, bool wrap) {
  const SimplePolygon& poly = dom_->polygon();
  const int n = poly.size();
  a = poly.wrap(a);
  b = poly.wrap(b);
  if (a == b && !wrap) return single_[a];
  std::optional<ChainBall>& slot = cache_[static_cast<std::size_t>(a) * n + b];
  if (!slot) {
    SiteSet sites(*dom_);
    for (int v : cw_range(n, a, b, wrap)) sites.add_vertex(v);
    const EnclosingBall e = min_enclosing_ball(sites);
    slot = ChainBall{e.radius, e.center};
  }
  return *slot;
}

NeighborMaps neighbor_maps(const PolygonDomain& dom) {
  ChainRadii radii(dom);
  return neighbor_maps(dom, radii);
}

NeighborMaps neighbor_maps(const PolygonDomain& dom, ChainRadii& radii) {
  const SimplePolygon& poly = dom.polygon();
  const int n = poly.size();
  NeighborMaps out;
  out.cw.resize(n);
  out.ccw.resize(n);
  out.best.resize(n);
  for (int v = 0; v < n; ++v) {
    auto forward = [&](int k) { return radii(v, v + k); };
    auto backward = [&](int k) { return radii(v + k, v); };
    auto maxrad_at = [&](int k) { return std::max(forward(k), backward(k)); };
    // Last offset k with r(v, v+k) < r(v+k, v); the sign flips once.
    int lo = 0, hi = n;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (forward(mid) < backward(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    int kb = std::max(lo, 1);
    if (lo + 1 <= n - 1 && lo >= 1 && maxrad_at(lo + 1) < maxrad_at(lo)) kb = lo + 1;
    const double best = maxrad_at(kb);
    const double tol = 1e-12 * (1.0 + best);
    int first = kb, last = kb;
    while (first > 1 && maxrad_at(first - 1) <= best + tol) --first;
    while (last < n - 1 && maxrad_at(last + 1) <= best + tol) ++last;
    // Exact ties (symmetric polygons) would swallow the vertices on either
    // side; keep the balanced ones, or else the two around the sign change.
    int eq_first = -1, eq_last = -1;
    for (int k = first; k <= last; ++k) {
      if (std::abs(forward(k) - backward(k)) <= tol) {
        if (eq_first < 0) eq_first = k;
        eq_last = k;
      }
    }
    if (eq_first >= 0) {
      first = eq_first;
      last = eq_last;
    } else {
      first = std::max(first, std::max(lo, 1));
      last = std::min(last, std::min(lo + 1, n - 1));
      if (first > last) first = last = kb;
    }
    out.cw[v] = poly.wrap(v + first - 1);
    out.ccw[v] = poly.wrap(v + last + 1);
    for (int k = first; k <= last; ++k) out.best[v].push_back(poly.wrap(v + k));
  }
  return out;
}

std::vector<CandidatePair> candidate_pairs(const PolygonDomain& dom) {
  return candidate_pairs(dom, neighbor_maps(dom));
}

std::vector<CandidatePair> candidate_pairs(const PolygonDomain& dom, const NeighborMaps& maps) {
  const SimplePolygon& poly = dom.polygon();
  const int n = poly.size();
  std::vector<CandidatePair> out;
  for (int i = 0; i < n; ++i) {
    const int a = maps.ccw[i];
    const int b = maps.cw[poly.wrap(i + 1)];
    std::set<int> type1;
    for (int x : {a, b}) {
      for (int j : {poly.wrap(x - 1), x}) {
        if (j != i) type1.insert(j);
      }
    }
    for (int j : type1) out.push_back({i, j, PairKind::Type1});
    auto pos = [&](int v) { return poly.wrap(v - i); };
    if (a != b && pos(a) < pos(b)) {
      for (int s = pos(a) + 1; s + 1 < pos(b); ++s) {
        const int j = poly.wrap(i + s);
        if (j != i && !type1.contains(j)) out.push_back({i, j, PairKind::Type2});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CandidatePair& x, const CandidatePair& y) {
    return std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  return out;
}

// ---------------------------------------------------------------------------

DecisionContext::DecisionContext(const PolygonDomain& dom, const CandidatePair& pair)
    : dom_(&dom), pair_(pair) {
  const SimplePolygon& poly = dom.polygon();
  const int n = poly.size();
  if (pair.i < 0 || pair.i >= n || pair.j < 0 || pair.j >= n || pair.i == pair.j) {
    throw GeometryError(ErrorKind::ContextMismatch, "edge pair out of range or repeated");
  }
  const int i = pair.i, j = pair.j;
  chains_[0] = cw_range(n, poly.wrap(i + 1), j, false);
  chains_[1] = cw_range(n, poly.wrap(j + 1), i, false);
  diagrams_.push_back(farthest_voronoi(dom, chains_[0]));
  diagrams_.push_back(farthest_voronoi(dom, chains_[1]));
  breaks_i_ = edge_breakpoints(dom, i);
  breaks_j_ = edge_breakpoints(dom, j);
  maps_ = {&dom.vertex_map(i), &dom.vertex_map(i + 1), &dom.vertex_map(j), &dom.vertex_map(j + 1)};
  ChainRadii radii(dom);
  inner_[0] = radii.ball(i + 1, j);
  inner_[1] = radii.ball(j + 1, i);
  outer_[0] = radii.ball(i, j + 1, true);
  outer_[1] = radii.ball(j, i + 1, true);
}

double DecisionContext::lower_bound() const { return std::max(inner(1), inner(2)); }

double DecisionContext::upper_bound() const {
  return std::min(std::max(outer(1), inner(2)), std::max(outer(2), inner(1)));
}

Coverage DecisionContext::coverage(int side, const Point& x, double r) const {
  const SimplePolygon& poly = dom_->polygon();
  FunnelPropagator fp(dom_->triangulation(), x);
  const std::vector<EdgeProfilePiece> pi = edge_profile(fp, pair_.i);
  const std::vector<EdgeProfilePiece> pj = edge_profile(fp, pair_.j);
  // Chain endpoints next to each edge are always within reach from I_t.
  if (side == 1) {
    return {lowest_covered(poly, pair_.i, pi, r, 1.0), highest_covered(poly, pair_.j, pj, r, 0.0)};
  }
  return {highest_covered(poly, pair_.i, pi, r, 0.0), lowest_covered(poly, pair_.j, pj, r, 1.0)};
}

int DecisionContext::subedge_i(double t) const { return subedge_of(breaks_i_, t); }
int DecisionContext::subedge_j(double t) const { return subedge_of(breaks_j_, t); }

CoverageProfile coverage_profile(const DecisionContext& ctx, int side, double r) {
  CoverageProfile prof;
  prof.side = side;
  prof.region = disks_intersection(ctx.domain(), ctx.chain(side), r);
  if (prof.region.empty || prof.region.full) return prof;
  if (prof.region.single_point) {
    const Coverage c = ctx.coverage(side, prof.region.point, r);
    prof.events.push_back({-1, 0.0, prof.region.point, c.phi, c.psi, kFinerArcEnd});
    prof.subchains.push_back({0});
    return prof;
  }
  prof.arcs = prof.region.refined(ctx.endpoint_maps());
  const int m = static_cast<int>(prof.arcs.size());
  double total = 0.0;
  for (const ArcPiece& a : prof.arcs) {
    if (a.circular) total += a.length();
  }
  if (total <= 0.0) return prof;
  const double h = total / kBoundarySamples;
  for (int a = 0; a < m; ++a) {
    const ArcPiece& arc = prof.arcs[a];
    if (!arc.circular) continue;
    const int k = std::max(1, static_cast<int>(std::ceil(arc.length() / h)));
    for (int s = 0; s < k; ++s) {
      prof.events.push_back({a, static_cast<double>(s) / k, {}, 0, 0, s == 0 ? kFinerArcEnd : 0u});
    }
    if (!prof.arcs[(a + 1) % m].circular) prof.events.push_back({a, 1.0, {}, 0, 0, kFinerArcEnd});
  }
  auto fill = [&](CoverageEvent& e) {
    e.p = prof.arcs[e.arc].point_at(e.frac);
    const Coverage c = ctx.coverage(side, e.p, r);
    e.phi = c.phi;
    e.psi = c.psi;
  };
  for (CoverageEvent& e : prof.events) fill(e);

  // Points where a coverage function passes a subedge breakpoint.
  std::vector<CoverageEvent> extra;
  const int ne = static_cast<int>(prof.events.size());
  for (int k = 0; k < ne; ++k) {
    const CoverageEvent& e = prof.events[k];
    const CoverageEvent& f = prof.events[(k + 1) % ne];
    if (ne < 2 || !contiguous(prof, e, f)) continue;
    const double end = f.arc == e.arc ? f.frac : 1.0;
    for (int which = 0; which < 2; ++which) {
      const std::span<const double> breaks = which == 0 ? ctx.breakpoints_i() : ctx.breakpoints_j();
      const double ve = which == 0 ? e.phi : e.psi;
      const double vf = which == 0 ? f.phi : f.psi;
      for (std::size_t q = 1; q + 1 < breaks.size(); ++q) {
        const double level = breaks[q];
        if ((ve - level) * (vf - level) >= 0.0) continue;
        double lo = e.frac, hi = end;
        CoverageEvent ev{e.arc, lo, {}, 0, 0, which == 0 ? kSubedgeI : kSubedgeJ};
        for (int it = 0; it < 40; ++it) {
          ev.frac = 0.5 * (lo + hi);
          fill(ev);
          const double v = which == 0 ? ev.phi : ev.psi;
          if ((v - level < 0.0) == (ve - level < 0.0)) {
            lo = ev.frac;
          } else {
            hi = ev.frac;
          }
        }
        extra.push_back(ev);
      }
    }
  }
  prof.events.insert(prof.events.end(), extra.begin(), extra.end());
  std::stable_sort(prof.events.begin(), prof.events.end(), [](const CoverageEvent& x, const CoverageEvent& y) {
    return std::pair(x.arc, x.frac) < std::pair(y.arc, y.frac);
  });

  // Split at the extrema of both functions; the first event is the
  // reference point.
  const int count = static_cast<int>(prof.events.size());
  std::vector<int> cuts{0};
  auto extreme = [&](bool phi, bool max) {
    int best = 0;
    for (int k = 1; k < count; ++k) {
      const double v = phi ? prof.events[k].phi : prof.events[k].psi;
      const double b = phi ? prof.events[best].phi : prof.events[best].psi;
      if (max ? v > b : v < b) best = k;
    }
    return best;
  };
  for (bool phi : {true, false}) {
    for (bool mx : {true, false}) cuts.push_back(extreme(phi, mx));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const int from = cuts[c];
    const int to = c + 1 < cuts.size() ? cuts[c + 1] : count;
    std::vector<int> idx;
    for (int k = from; k <= to; ++k) idx.push_back(k % count);
    if (count == 1) idx.resize(1);
    prof.subchains.push_back(std::move(idx));
  }
  for (const std::vector<int>& sc : prof.subchains) {
    std::vector<double> phi, psi;
    for (int k : sc) {
      phi.push_back(prof.events[k].phi);
      psi.push_back(prof.events[k].psi);
    }
    prof.inversions += count_inversions(phi) + count_inversions(psi);
  }
  return prof;
}

DecisionStats& DecisionStats::operator+=(const DecisionStats& o) {
  decisions += o.decisions;
  subchain_pairs += o.subchain_pairs;
  events += o.events;
  inversions += o.inversions;
  mu_sequences += o.mu_sequences;
  mu_inversions += o.mu_inversions;
  refinements += o.refinements;
  return *this;
}

DecisionOutcome decide(const DecisionContext& ctx, const CandidatePair& pair, double r) {
  if (!(pair == ctx.pair())) {
    throw GeometryError(ErrorKind::ContextMismatch, "decision context built for another edge pair");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) throw GeometryError(ErrorKind::NegativeRadius, "radius must be >= 0");
  DecisionOutcome out;
  out.stats.decisions = 1;
  if (ctx.inner(1) > r || ctx.inner(2) > r) {
    out.screened = true;
    return out;
  }
  if (r >= ctx.outer(1) || r >= ctx.outer(2)) {
    out.screened = true;
    out.yes = true;
    Witness w;
    if (r >= ctx.outer(1)) {
      w.c1 = ctx.outer_ball(1).center;
      w.c2 = ctx.inner_ball(2).center;
      w.alpha = {pair.i, 0.0};
      w.beta = {pair.j, 1.0};
    } else {
      w.c1 = ctx.inner_ball(1).center;
      w.c2 = ctx.outer_ball(2).center;
      w.alpha = {pair.i, 1.0};
      w.beta = {pair.j, 0.0};
    }
    w.cell = {-1, -1, ctx.subedge_i(w.alpha.t), ctx.subedge_j(w.beta.t)};
    out.witness = w;
    return out;
  }

  const CoverageProfile p1 = coverage_profile(ctx, 1, r);
  const CoverageProfile p2 = coverage_profile(ctx, 2, r);
  out.stats.events = static_cast<int>(p1.events.size() + p2.events.size());
  out.stats.inversions = p1.inversions + p2.inversions;
  if (p1.events.empty() || p2.events.empty()) return out;

  for (const std::vector<int>& a : p1.subchains) {
    for (const std::vector<int>& b : p2.subchains) {
      ++out.stats.subchain_pairs;
      mu_check(p1, a, p2, b, out.stats);
    }
  }

  // Exact test on all event pairs, then continuous search near the best
  // misses whose neighborhoods could still close the gap.
  const int m1 = static_cast<int>(p1.events.size());
  const int m2 = static_cast<int>(p2.events.size());
  auto variation = [](const CoverageProfile& p) {
    const int m = static_cast<int>(p.events.size());
    std::vector<double> v(m, 0.0);
    for (int k = 0; k < m && m > 1; ++k) {
      const CoverageEvent& e = p.events[k];
      for (int d : {-1, 1}) {
        const CoverageEvent& f = p.events[(k + d + m) % m];
        if (!(d < 0 ? contiguous(p, f, e) : contiguous(p, e, f))) continue;
        v[k] = std::max({v[k], std::abs(f.phi - e.phi), std::abs(f.psi - e.psi)});
      }
    }
    return v;
  };
  const std::vector<double> var1 = variation(p1), var2 = variation(p2);
  struct Cell {
    double value;
    int x;
    int y;
  };
  std::vector<Cell> near;
  Cell top{-kInf, -1, -1};
  for (int x = 0; x < m1; ++x) {
    const CoverageEvent& ex = p1.events[x];
    for (int y = 0; y < m2; ++y) {
      const CoverageEvent& ey = p2.events[y];
      const double f = std::min(ey.phi - ex.phi, ex.psi - ey.psi);
      if (f > top.value) top = {f, x, y};
      if (f + 2.0 * (var1[x] + var2[y]) >= 0.0) near.push_back({f, x, y});
    }
  }
  auto accept = [&](const Point& c1, const Coverage& cv1, int arc1, const Point& c2, const Coverage& cv2,
                    int arc2) {
    out.yes = true;
    out.witness = make_witness(ctx, c1, cv1, arc1, c2, cv2, arc2);
  };
  if (top.value >= -kFeasTol) {
    const CoverageEvent& ex = p1.events[top.x];
    const CoverageEvent& ey = p2.events[top.y];
    accept(ex.p, {ex.phi, ex.psi}, ex.arc, ey.p, {ey.phi, ey.psi}, ey.arc);
    return out;
  }
  std::sort(near.begin(), near.end(), [](const Cell& a, const Cell& b) {
    return std::tie(b.value, a.x, a.y) < std::tie(a.value, b.x, b.y);
  });
  std::vector<Cell> chosen;
  for (const Cell& c : near) {
    if (static_cast<int>(chosen.size()) >= kMaxRefinements) break;
    bool close = false;
    for (const Cell& d : chosen) {
      const int dx = std::min(std::abs(c.x - d.x), m1 - std::abs(c.x - d.x));
      const int dy = std::min(std::abs(c.y - d.y), m2 - std::abs(c.y - d.y));
      if (dx <= 1 && dy <= 1) close = true;
    }
    if (close) continue;
    chosen.push_back(c);
    ++out.stats.refinements;
    const Candidate best = refine_pair(ctx, p1, c.x, p2, c.y, r);
    if (best.value >= -kFeasTol) {
      accept(best.x, best.cx, best.arc1, best.partner.y, best.partner.cov, best.partner.arc);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PartitionRadius partition_radius(const PolygonDomain& dom, const BoundaryCoord& alpha,
                                 const BoundaryCoord& beta) {
  const SimplePolygon& poly = dom.polygon();
  PartitionRadius out;
  const Point pa = poly.point_at(alpha), pb = poly.point_at(beta);
  if (dist(pa, pb) <= kOnBoundaryTol) {
    // One side shrinks to a point and the other is the whole polygon.
    const double full = full_radius(dom);
    const bool alpha_first = poly.wrap(alpha.edge + 1) == beta.edge;
    out.first = alpha_first ? 0.0 : full;
    out.second = alpha_first ? full : 0.0;
    out.radius = full;
    out.c1 = out.c2 = pa;
    const OneCenterResult oc = one_center(dom);
    (alpha_first ? out.c2 : out.c1) = oc.center;
    return out;
  }
  const RestrictedRadius r1 = restricted_radius(dom, alpha, beta);
  const RestrictedRadius r2 = restricted_radius(dom, beta, alpha);
  out.first = r1.radius;
  out.second = r2.radius;
  out.radius = std::max(r1.radius, r2.radius);
  out.c1 = r1.center;
  out.c2 = r2.center;
  return out;
}

std::optional<PartitionRadius> refine_quadruple(const DecisionContext& ctx, const Witness& w,
                                                BoundaryCoord* alpha, BoundaryCoord* beta) {
  const PolygonDomain& dom = ctx.domain();
  const CandidatePair& pr = ctx.pair();
  auto span_of = [](std::span<const double> breaks, int s) {
    const int last = static_cast<int>(breaks.size()) - 1;
    return std::pair(breaks[std::max(0, s - 1)], breaks[std::min(last, s + 2)]);
  };
  const auto [a_lo, a_hi] = span_of(ctx.breakpoints_i(), ctx.subedge_i(w.alpha.t));
  const auto [b_lo, b_hi] = span_of(ctx.breakpoints_j(), ctx.subedge_j(w.beta.t));

  std::optional<PartitionRadius> best;
  BoundaryCoord best_a, best_b;
  auto radius_at = [&](double a, double b) {
    const BoundaryCoord ca{pr.i, a}, cb{pr.j, b};
    PartitionRadius v = partition_radius(dom, ca, cb);
    if (!best || v.radius < best->radius) {
      best = v;
      best_a = ca;
      best_b = cb;
    }
    return v;
  };
  // For fixed a the first radius grows with b and the second shrinks, so the
  // best b balances them.
  auto balanced = [&](double a) {
    PartitionRadius lo = radius_at(a, b_lo);
    if (lo.first >= lo.second) return lo.radius;
    PartitionRadius hi = radius_at(a, b_hi);
    if (hi.first <= hi.second) return hi.radius;
    double x0 = b_lo, x1 = b_hi;
    double f0 = lo.first - lo.second, f1 = hi.first - hi.second;
    double value = std::min(lo.radius, hi.radius);
    int side = 0;
    for (int it = 0; it < 40 && x1 - x0 > 1e-13; ++it) {
      const double x = (x0 * f1 - x1 * f0) / (f1 - f0);
      const PartitionRadius v = radius_at(a, x);
      value = std::min(value, v.radius);
      const double fx = v.first - v.second;
      if (fx == 0.0) break;
      if (fx < 0.0) {
        x0 = x;
        f0 = fx;
        if (side == -1) f1 *= 0.5;
        side = -1;
      } else {
        x1 = x;
        f1 = fx;
        if (side == 1) f0 *= 0.5;
        side = 1;
      }
    }
    return value;
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = a_lo, hi = a_hi;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = balanced(x1), f2 = balanced(x2);
  balanced(w.alpha.t);
  for (int it = 0; it < 40 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = balanced(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = balanced(x2);
    }
  }
  if (best) {
    *alpha = best_a;
    *beta = best_b;
  }
  return best;
}

TwoCenterResult optimize_pair(const DecisionContext& ctx, double eps) {
  const PolygonDomain& dom = ctx.domain();
  const CandidatePair& pr = ctx.pair();
  TwoCenterResult res;
  res.pair = pr;
  const double lo = ctx.lower_bound();
  const double hi = ctx.upper_bound();

  auto classify = [&](double radius) {
    const double tol = 1e-7 * (1.0 + radius);
    auto tight = [&](const BoundaryCoord& b) {
      return std::abs(geodesic_to(dom, res.c1, b) - radius) <= tol &&
             std::abs(geodesic_to(dom, res.c2, b) - radius) <= tol;
    };
    const int count = (tight(res.alpha) ? 1 : 0) + (tight(res.beta) ? 1 : 0);
    return count == 0 ? 1 : count + 1;
  };

  // Both chain centers may already cover the partition edges.
  {
    const Point c1 = ctx.inner_ball(1).center, c2 = ctx.inner_ball(2).center;
    const Coverage k1 = ctx.coverage(1, c1, lo), k2 = ctx.coverage(2, c2, lo);
    if (k1.phi <= k2.phi + kFeasTol && k2.psi <= k1.psi + kFeasTol) {
      res.c1 = c1;
      res.c2 = c2;
      res.radius = lo;
      res.alpha = {pr.i, std::clamp(0.5 * (k1.phi + k2.phi), 0.0, 1.0)};
      res.beta = {pr.j, std::clamp(0.5 * (k1.psi + k2.psi), 0.0, 1.0)};
      res.configuration = 1;
      res.bracket_low = res.bracket_high = lo;
      return res;
    }
  }

  double r_low = lo, r_high = hi;
  std::optional<Witness> witness;
  auto probe = [&](double r) {
    const DecisionOutcome d = decide(ctx, pr, r);
    res.stats += d.stats;
    if (d.yes) witness = d.witness;
    return d.yes;
  };
  if (probe(lo)) {
    r_high = lo;
  } else {
    // Bracket between consecutive diagram radii, then bisect.
    std::vector<double> cand;
    for (int side : {1, 2}) {
      for (double d : ctx.diagram(side).vertex_distances()) {
        if (d > lo && d < hi) cand.push_back(d);
      }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    int a = -1, b = static_cast<int>(cand.size());
    while (b - a > 1) {
      const int mid = (a + b) / 2;
      if (probe(cand[mid])) {
        b = mid;
      } else {
        a = mid;
      }
    }
    if (a >= 0) r_low = cand[a];
    if (b < static_cast<int>(cand.size())) r_high = cand[b];
    if (!witness) probe(r_high);
    while (r_high - r_low > eps) {
      const double mid = 0.5 * (r_low + r_high);
      if (probe(mid)) {
        r_high = mid;
      } else {
        r_low = mid;
      }
    }
  }
  res.bracket_low = r_low;
  res.bracket_high = r_high;

  if (!witness) {
    // Screens can only answer yes at the upper bound; fall back to it.
    witness = decide(ctx, pr, hi).witness;
  }
  BoundaryCoord alpha = witness->alpha, beta = witness->beta;
  PartitionRadius part = partition_radius(dom, alpha, beta);
  BoundaryCoord ra, rb;
  if (const std::optional<PartitionRadius> refined = refine_quadruple(ctx, *witness, &ra, &rb)) {
    if (refined->radius < part.radius &&
        (refined->radius >= r_low || probe(refined->radius))) {
      part = *refined;
      alpha = ra;
      beta = rb;
    }
  }
  res.alpha = alpha;
  res.beta = beta;
  res.c1 = part.c1;
  res.c2 = part.c2;
  res.radius = part.radius;
  res.configuration = classify(res.radius);
  return res;
}

TwoCenterResult optimize_pair(const PolygonDomain& dom, const CandidatePair& pair, double eps) {
  const DecisionContext ctx(dom, pair);
  return optimize_pair(ctx, eps);
}

TwoCenterResult solve(const PolygonDomain& dom, double eps, int threads) {
  const std::vector<CandidatePair> pairs = candidate_pairs(dom);
  auto better = [](const TwoCenterResult& x, const TwoCenterResult& y) {
    const double tol = 1e-9 * (1.0 + y.radius);
    if (x.radius < y.radius - tol) return true;
    if (x.radius > y.radius + tol) return false;
    return std::pair(x.pair.i, x.pair.j) < std::pair(y.pair.i, y.pair.j);
  };
  DecisionStats totals;
  std::optional<TwoCenterResult> best;
  if (threads > 1) {
    std::vector<TwoCenterResult> results(pairs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < pairs.size(); k = next++) results[k] = optimize_pair(dom, pairs[k], eps);
      });
    }
    for (std::thread& th : pool) th.join();
    for (const TwoCenterResult& r : results) {
      totals += r.stats;
      if (!best || better(r, *best)) best = r;
    }
  } else {
    ChainRadii radii(dom);
    std::vector<std::pair<double, CandidatePair>> order;
    for (const CandidatePair& p : pairs) {
      const double lo = std::max(radii(p.i + 1, p.j), radii(p.j + 1, p.i));
      order.emplace_back(lo, p);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [lo, p] : order) {
      if (best && lo > best->radius + 1e-9 * (1.0 + best->radius)) break;
      const TwoCenterResult r = optimize_pair(dom, p, eps);
      totals += r.stats;
      if (!best || better(r, *best)) best = r;
    }
  }
  TwoCenterResult out = *best;
  out.stats = totals;
  return out;
}

}  // namespace geocenter
