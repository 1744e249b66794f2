#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "geocenter/oracle.hpp"
#include "geocenter/twocenter.hpp"
#include "test_support.hpp"

using namespace geocenter;
using geocenter::testing::interior_points;

namespace {

const double kHalfRect = std::sqrt(5.0) / 4.0;

double cover_excess(const PolygonDomain& dom, const Point& c1, const Point& c2, double r, int samples,
                    std::uint64_t seed) {
  double worst = -1e9;
  for (const Point& q : interior_points(dom.polygon(), samples, seed)) {
    const double d = std::min(geodesic_distance(dom, c1, q), geodesic_distance(dom, c2, q));
    worst = std::max(worst, d - r);
  }
  return worst;
}

}  // namespace

TEST_CASE("neighbor maps on the square") {
  const PolygonDomain sq(fixtures::square());
  const NeighborMaps maps = neighbor_maps(sq);
  for (int v = 0; v < 4; ++v) {
    CHECK(maps.best[v] == std::vector<int>{(v + 2) % 4});
    CHECK(maps.cw[v] == (v + 1) % 4);
    CHECK(maps.ccw[v] == (v + 3) % 4);
  }
}

TEST_CASE("neighbor maps match an exhaustive scan") {
  for (int seed = 1; seed <= 12; ++seed) {
    const int n = 8 + (seed * 7) % 25;
    const PolygonDomain dom(random_polygon(n, 4000 + seed));
    ChainRadii radii(dom);
    const NeighborMaps maps = neighbor_maps(dom, radii);
    for (int v = 0; v < n; ++v) {
      double best = 1e18;
      for (int k = 1; k < n; ++k) {
        const int w = (v + k) % n;
        best = std::min(best, std::max(radii(v, w), radii(w, v)));
      }
      // Plateaus are common, so compare values rather than indices.
      REQUIRE_FALSE(maps.best[v].empty());
      for (int w : maps.best[v]) CHECK(std::max(radii(v, w), radii(w, v)) <= best * (1 + 1e-12));
      // Sign test on both sides of f(v).
      for (int w = (v + 1) % n; w != (maps.cw[v] + 1) % n && w != v; w = (w + 1) % n) {
        CHECK(radii(v, w) < radii(w, v));
      }
      for (int w = maps.ccw[v]; w != v; w = (w + 1) % n) CHECK(radii(v, w) > radii(w, v));
    }
  }
}

TEST_CASE("candidate pair counts") {
  std::vector<SimplePolygon> polys{fixtures::square(), fixtures::lshape()};
  for (int seed = 1; seed <= 15; ++seed) polys.push_back(random_polygon(8 + 3 * seed, 4100 + seed));
  for (const SimplePolygon& poly : polys) {
    const PolygonDomain dom(poly);
    const std::vector<CandidatePair> pairs = candidate_pairs(dom);
    CHECK(static_cast<int>(pairs.size()) <= 5 * dom.size());
    std::map<int, int> type2_per_edge;
    for (const CandidatePair& p : pairs) {
      CHECK(p.i != p.j);
      if (p.kind == PairKind::Type2) ++type2_per_edge[p.j];
    }
    for (const auto& [edge, count] : type2_per_edge) CHECK(count <= 1);
    CHECK(std::is_sorted(pairs.begin(), pairs.end(), [](const CandidatePair& a, const CandidatePair& b) {
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    }));
  }
}

TEST_CASE("decide on the square") {
  const PolygonDomain sq(fixtures::square());
  const CandidatePair pair{0, 2, PairKind::Type1};
  const DecisionContext ctx(sq, pair);
  CHECK(ctx.lower_bound() == doctest::Approx(0.5));
  CHECK(ctx.upper_bound() == doctest::Approx(std::sqrt(0.5)));

  const DecisionOutcome yes = decide(ctx, pair, 0.60);
  REQUIRE(yes.yes);
  REQUIRE(yes.witness);
  CHECK(cover_excess(sq, yes.witness->c1, yes.witness->c2, 0.60, 1000, 1) <= 1e-7);
  CHECK(partition_radius(sq, yes.witness->alpha, yes.witness->beta).radius <= 0.60 + 1e-12);

  CHECK_FALSE(decide(ctx, pair, 0.50).yes);
  CHECK_FALSE(decide(ctx, pair, kHalfRect - 1e-6).yes);
  CHECK(decide(ctx, pair, kHalfRect + 1e-6).yes);

  CHECK_THROWS_AS(decide(ctx, CandidatePair{0, 1, PairKind::Type1}, 0.6), GeometryError);
  CHECK_THROWS_AS(decide(ctx, pair, -0.1), GeometryError);
}

TEST_CASE("decisions are monotone in the radius, with valid witnesses and monotone profiles") {
  std::mt19937_64 rng(17);
  DecisionStats stats;
  for (int trial = 0; trial < 30; ++trial) {
    const PolygonDomain dom(random_polygon(8 + trial % 20, 4200 + trial));
    const std::vector<CandidatePair> pairs = candidate_pairs(dom);
    const CandidatePair pair = pairs[rng() % pairs.size()];
    const DecisionContext ctx(dom, pair);
    std::uniform_real_distribution<double> radius(ctx.lower_bound() * 0.98, ctx.upper_bound() * 1.02);
    std::vector<double> probes;
    for (int k = 0; k < 6; ++k) probes.push_back(radius(rng));
    std::sort(probes.begin(), probes.end());
    bool seen_yes = false;
    for (double r : probes) {
      const DecisionOutcome out = decide(ctx, pair, r);
      stats += out.stats;
      CHECK_FALSE((seen_yes && !out.yes));
      seen_yes = seen_yes || out.yes;
      if (out.yes) {
        REQUIRE(out.witness);
        CHECK(cover_excess(dom, out.witness->c1, out.witness->c2, r, 300, trial) <= 1e-7);
      }
    }
  }
  CHECK(stats.inversions == 0);
  CHECK(stats.mu_inversions == 0);
}

TEST_CASE("coverage profiles are split into at most five subchains") {
  const PolygonDomain sq(fixtures::square());
  const DecisionContext ctx(sq, {0, 2, PairKind::Type1});
  for (int side : {1, 2}) {
    const CoverageProfile prof = coverage_profile(ctx, side, 0.55);
    CHECK(prof.region.has_boundary());
    CHECK(prof.subchains.size() <= 5);
    CHECK(prof.inversions == 0);
    REQUIRE_FALSE(prof.events.empty());
    CHECK((prof.events.front().tags & kFinerArcEnd) != 0);
  }
  // Below the inner screen radius the intersection is still a lens, but the
  // screens answer first.
  const DecisionOutcome out = decide(ctx, {0, 2, PairKind::Type1}, 0.49);
  CHECK(out.screened);
  CHECK_FALSE(out.yes);
}

TEST_CASE("optimize_pair examples") {
  const PolygonDomain sq(fixtures::square());
  const TwoCenterResult r = optimize_pair(sq, {0, 2, PairKind::Type1}, 1e-7);
  CHECK(std::abs(r.radius - kHalfRect) <= 1e-6);
  CHECK(dist(lerp(r.c1, r.c2, 0.5), {0.5, 0.5}) <= 1e-4);
  CHECK(dist(r.c1, r.c2) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.radius >= r.bracket_low - 1e-12);
  CHECK(r.radius <= r.bracket_high + 1e-12);

  const PolygonDomain ls(fixtures::lshape());
  double best = 1e9;
  for (const CandidatePair& p : candidate_pairs(ls)) best = std::min(best, optimize_pair(ls, p, 1e-7).radius);
  CHECK(best >= 1.0);
  CHECK(best <= std::sqrt(5.0) / 2 + 1e-6);
}

TEST_CASE("optimize_pair stays inside its bracket") {
  for (int seed = 1; seed <= 6; ++seed) {
    const PolygonDomain dom(random_polygon(8 + 2 * seed, 4300 + seed));
    for (const CandidatePair& p : candidate_pairs(dom)) {
      const TwoCenterResult r = optimize_pair(dom, p, 1e-7);
      CHECK(r.radius >= r.bracket_low - 1e-12);
      CHECK(r.radius <= r.bracket_high + 1e-12);
      CHECK(partition_radius(dom, r.alpha, r.beta).radius == doctest::Approx(r.radius).epsilon(1e-12));
    }
  }
}

TEST_CASE("partition radius with coincident partition points") {
  const PolygonDomain sq(fixtures::square());
  // alpha at the end of e_0 and beta at the start of e_1: P(alpha, beta) is a point.
  const PartitionRadius p = partition_radius(sq, {0, 1.0}, {1, 0.0});
  CHECK(p.first == 0.0);
  CHECK(p.second == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  const PartitionRadius q = partition_radius(sq, {1, 0.0}, {0, 1.0});
  CHECK(q.first == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(q.second == 0.0);
}

TEST_CASE("candidate pairs suffice") {
  for (int seed = 1; seed <= 3; ++seed) {
    const int n = 8 + 3 * seed;
    const PolygonDomain dom(random_polygon(n, 4400 + seed));
    const TwoCenterResult best = solve(dom);
    double all = 1e9;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) all = std::min(all, optimize_pair(dom, {i, j, PairKind::Type1}, 1e-7).radius);
      }
    }
    CHECK(std::abs(best.radius - all) <= 1e-6);
  }
}

TEST_CASE("solve") {
  const PolygonDomain sq(fixtures::square());
  const TwoCenterResult r = solve(sq);
  CHECK(std::abs(r.radius - kHalfRect) <= 1e-6);
  CHECK(r.radius <= one_center(sq).radius);
  CHECK(r.configuration == 3);
  CHECK(cover_excess(sq, r.c1, r.c2, r.radius, 2000, 5) <= 1e-6);

  for (int seed = 1; seed <= 4; ++seed) {
    const PolygonDomain dom(random_polygon(10 + 3 * seed, 4500 + seed));
    const TwoCenterResult one = solve(dom, 1e-7, 1);
    const TwoCenterResult many = solve(dom, 1e-7, 4);
    CHECK(one.radius == many.radius);
    CHECK(one.pair == many.pair);
    CHECK(one.radius <= one_center(dom).radius + 1e-9);
    const SampledTwoCenter oracle = sampled_two_center(dom, 4 * dom.size());
    CHECK(oracle.radius - one.radius >= -2e-5);
    CHECK(cover_excess(dom, one.c1, one.c2, one.radius, 1000, seed) <= 1e-6);
  }
}
