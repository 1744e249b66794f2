#include <benchmark/benchmark.h>

#include <random>

#include "geocenter/disks.hpp"
#include "geocenter/onecenter.hpp"
#include "geocenter/twocenter.hpp"
#include "geocenter/voronoi.hpp"

using namespace geocenter;

namespace {

Point inside_point(const SimplePolygon& poly, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(poly.bbox_min().x, poly.bbox_max().x);
  std::uniform_real_distribution<double> uy(poly.bbox_min().y, poly.bbox_max().y);
  for (;;) {
    const Point p{ux(rng), uy(rng)};
    if (point_in_polygon(poly, p) == Containment::Inside) return p;
  }
}

void BM_Domain(benchmark::State& state) {
  const SimplePolygon poly = random_polygon(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    PolygonDomain dom(poly);
    benchmark::DoNotOptimize(dom.size());
  }
}
BENCHMARK(BM_Domain)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

void BM_GeodesicDistance(benchmark::State& state) {
  const PolygonDomain dom(random_polygon(static_cast<int>(state.range(0)), 2));
  std::mt19937_64 rng(2);
  std::vector<Point> pts;
  for (int k = 0; k < 64; ++k) pts.push_back(inside_point(dom.polygon(), rng));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesic_distance(dom, pts[k % 64], pts[(k + 1) % 64]));
    ++k;
  }
}
BENCHMARK(BM_GeodesicDistance)->RangeMultiplier(2)->Range(8, 64);

void BM_FarthestVoronoi(benchmark::State& state) {
  const PolygonDomain dom(random_polygon(static_cast<int>(state.range(0)), 3));
  std::vector<int> all(dom.size());
  for (int v = 0; v < dom.size(); ++v) all[v] = v;
  for (auto _ : state) benchmark::DoNotOptimize(farthest_voronoi(dom, all).vertices().size());
}
BENCHMARK(BM_FarthestVoronoi)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_OneCenter(benchmark::State& state) {
  const PolygonDomain dom(random_polygon(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(one_center(dom).radius);
}
BENCHMARK(BM_OneCenter)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

void BM_Decide(benchmark::State& state) {
  const PolygonDomain dom(random_polygon(static_cast<int>(state.range(0)), 5));
  // First pair whose midpoint radius gets past the screens.
  for (const CandidatePair& pair : candidate_pairs(dom)) {
    const DecisionContext ctx(dom, pair);
    const double r = 0.5 * (ctx.lower_bound() + ctx.upper_bound());
    if (decide(ctx, pair, r).screened) continue;
    for (auto _ : state) benchmark::DoNotOptimize(decide(ctx, pair, r).yes);
    return;
  }
  state.SkipWithError("every pair was screened");
}
BENCHMARK(BM_Decide)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const PolygonDomain dom(random_polygon(static_cast<int>(state.range(0)), 6));
  for (auto _ : state) benchmark::DoNotOptimize(solve(dom).radius);
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
