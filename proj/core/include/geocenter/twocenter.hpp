#pragma once

#include <optional>
#include <span>
#include <vector>

#include "geocenter/disks.hpp"
#include "geocenter/onecenter.hpp"
#include "geocenter/voronoi.hpp"

namespace geocenter {

/// Smallest enclosing ball of a clockwise vertex chain.
struct ChainBall {
  double radius = 0.0;
  Point center;
};

/// Radius of P(v_a, v_b) for vertex pairs, computed on demand and cached.
/// Not thread-safe.
class ChainRadii {
 public:
  explicit ChainRadii(const PolygonDomain& dom);

  /// For a == b the chain is the single vertex, or the whole boundary when
  /// `wrap` is set.
  const ChainBall& ball(int a, int b, bool wrap = false);
  double operator()(int a, int b, bool wrap = false) { return ball(a, b, wrap).radius; }

 private:
  const PolygonDomain* dom_;
  std::vector<std::optional<ChainBall>> cache_;  // a * n + b; the diagonal holds full loops
  std::vector<ChainBall> single_;
};

/// Per vertex v: best[v] lists the vertices w minimizing maxrad(v, w), in
/// clockwise order; cw[v] is the vertex just before them and ccw[v] the
/// vertex just after them (either may be v itself).
struct NeighborMaps {
  std::vector<int> cw;
  std::vector<int> ccw;
  std::vector<std::vector<int>> best;
};

NeighborMaps neighbor_maps(const PolygonDomain& dom);
NeighborMaps neighbor_maps(const PolygonDomain& dom, ChainRadii& radii);

enum class PairKind { Type1, Type2 };

struct CandidatePair {
  int i = 0;
  int j = 0;
  PairKind kind = PairKind::Type1;

  bool operator==(const CandidatePair&) const = default;
};

/// Sorted by (i, j).
std::vector<CandidatePair> candidate_pairs(const PolygonDomain& dom);
std::vector<CandidatePair> candidate_pairs(const PolygonDomain& dom, const NeighborMaps& maps);

/// Parameters on e_i (side 1: infimum, side 2: supremum) and on e_j (side 1:
/// supremum, side 2: infimum) of the points a radius-r disk still covers.
struct Coverage {
  double phi = 0.0;
  double psi = 0.0;
};

/// Per-pair data that does not depend on the radius.
class DecisionContext {
 public:
  DecisionContext(const PolygonDomain& dom, const CandidatePair& pair);

  const PolygonDomain& domain() const { return *dom_; }
  const CandidatePair& pair() const { return pair_; }

  /// Sites of I_1 (v_{i+1}..v_j) or I_2 (v_{j+1}..v_i).
  std::span<const int> chain(int side) const { return chains_[side - 1]; }
  const FarthestVoronoi& diagram(int side) const { return diagrams_[side - 1]; }
  /// Sorted subedge breakpoints on e_i and e_j, including 0 and 1.
  std::span<const double> breakpoints_i() const { return breaks_i_; }
  std::span<const double> breakpoints_j() const { return breaks_j_; }
  std::span<const ShortestPathMap* const> endpoint_maps() const { return maps_; }

  /// r(v_{i+1}, v_j) for side 1 and r(v_{j+1}, v_i) for side 2.
  double inner(int side) const { return inner_[side - 1].radius; }
  /// r(v_i, v_{j+1}) for side 1 and r(v_j, v_{i+1}) for side 2.
  double outer(int side) const { return outer_[side - 1].radius; }
  const ChainBall& inner_ball(int side) const { return inner_[side - 1]; }
  const ChainBall& outer_ball(int side) const { return outer_[side - 1]; }

  /// r*_ij lies in [lower_bound, upper_bound].
  double lower_bound() const;
  double upper_bound() const;

  Coverage coverage(int side, const Point& x, double r) const;
  /// Index of the subedge of e_i (or e_j) containing parameter t.
  int subedge_i(double t) const;
  int subedge_j(double t) const;

 private:
  const PolygonDomain* dom_;
  CandidatePair pair_;
  std::vector<int> chains_[2];
  std::vector<FarthestVoronoi> diagrams_;
  std::vector<double> breaks_i_;
  std::vector<double> breaks_j_;
  std::vector<const ShortestPathMap*> maps_;
  ChainBall inner_[2];
  ChainBall outer_[2];
};

enum EventTag : unsigned {
  kFinerArcEnd = 1u,
  kSubedgeI = 2u,
  kSubedgeJ = 4u,
};

struct CoverageEvent {
  int arc = -1;  // finer arc index; -1 when the intersection is one point
  double frac = 0.0;
  Point p;
  double phi = 0.0;
  double psi = 0.0;
  unsigned tags = 0;
};

/// Boundary of I_1 or I_2 at one radius with the coverage functions sampled
/// along its circular part and split into monotone subchains.
struct CoverageProfile {
  int side = 1;
  DiskIntersection region;
  std::vector<ArcPiece> arcs;         // finer arcs in boundary order
  std::vector<CoverageEvent> events;  // boundary order, starting at the reference point
  std::vector<std::vector<int>> subchains;  // event indices; the last may wrap to 0
  int inversions = 0;  // steps against a subchain's direction by more than 1e-9
};

CoverageProfile coverage_profile(const DecisionContext& ctx, int side, double r);

/// Finer arcs holding the two centers and subedges holding the partition
/// points.
struct Quadruple {
  int arc1 = -1;
  int arc2 = -1;
  int subedge_i = -1;
  int subedge_j = -1;
};

struct Witness {
  Point c1;
  Point c2;
  BoundaryCoord alpha;  // on e_i
  BoundaryCoord beta;   // on e_j
  Quadruple cell;
};

struct DecisionStats {
  int decisions = 0;
  int subchain_pairs = 0;
  int events = 0;
  int inversions = 0;     // coverage functions
  int mu_sequences = 0;
  int mu_inversions = 0;  // decreasing steps of mu_1 or mu_2
  int refinements = 0;

  DecisionStats& operator+=(const DecisionStats& o);
};

struct DecisionOutcome {
  bool yes = false;
  bool screened = false;  // answered by the chain-radius screens
  std::optional<Witness> witness;
  DecisionStats stats;
};

/// Throws ContextMismatch if ctx was built for another pair.
DecisionOutcome decide(const DecisionContext& ctx, const CandidatePair& pair, double r);

struct TwoCenterResult {
  Point c1;
  Point c2;
  double radius = 0.0;
  BoundaryCoord alpha;
  BoundaryCoord beta;
  CandidatePair pair;
  int configuration = 1;
  double bracket_low = 0.0;   // largest radius decided "no"
  double bracket_high = 0.0;  // smallest radius decided "yes" before refinement
  DecisionStats stats;
};

/// Radius of both subpolygons of a partition with alpha on e_i and beta on
/// e_j, plus their centers.
struct PartitionRadius {
  double radius = 0.0;  // the larger of the two
  double first = 0.0;   // P(alpha, beta)
  double second = 0.0;  // P(beta, alpha)
  Point c1;
  Point c2;
};
PartitionRadius partition_radius(const PolygonDomain& dom, const BoundaryCoord& alpha,
                                 const BoundaryCoord& beta);

/// Local minimization of maxrad over the partition points around a witness,
/// within the witness's subedges and their neighbors.
std::optional<PartitionRadius> refine_quadruple(const DecisionContext& ctx, const Witness& w,
                                                BoundaryCoord* alpha, BoundaryCoord* beta);

TwoCenterResult optimize_pair(const DecisionContext& ctx, double eps);
TwoCenterResult optimize_pair(const PolygonDomain& dom, const CandidatePair& pair, double eps);

/// Geodesic 2-center: the best optimize_pair result over the candidate pairs
/// (lowest (i, j) among equal radii). threads > 1 evaluates pairs in
/// parallel without pruning.
TwoCenterResult solve(const PolygonDomain& dom, double eps = 1e-7, int threads = 1);

}  // namespace geocenter
