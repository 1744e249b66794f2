// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli_runner.hpp"
#include "geocenter/oracle.hpp"
#include "geocenter/twocenter.hpp"
#include "test_support.hpp"

using namespace geocenter;
using namespace geocenter::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const Verdict& v) {
  std::printf("criterion %d: %s %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
  std::fflush(stdout);
  failures += !v.pass;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs body(k) for k in [0, count) on all hardware threads.
void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next++; k < count; k = next++) body(k);
    });
  }
  for (auto& t : pool) t.join();
}

std::map<int, int> site_runs(const DiskIntersection& region) {
  std::vector<int> seq;
  for (const ArcPiece& a : region.arcs) {
    if (a.circular) seq.push_back(a.site);
  }
  std::map<int, int> runs;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq.size() == 1 || seq[(k + seq.size() - 1) % seq.size()] != seq[k]) ++runs[seq[k]];
  }
  return runs;
}

// Shared structural tallies for criteria 6 and 9.
struct Tally {
  int candidate_sets = 0;
  int candidate_violations = 0;
  int intersections = 0;
  int arc_violations = 0;
  int run_violations = 0;
  DecisionStats stats;

  void candidates(const PolygonDomain& dom) {
    ++candidate_sets;
    candidate_violations += static_cast<int>(candidate_pairs(dom).size()) > 5 * dom.size();
  }
  void intersection(const DiskIntersection& region, int n, int sites) {
    if (!region.has_boundary()) return;
    ++intersections;
    arc_violations += region.circular_arc_count() > 4 * (n + sites);
    for (const auto& [site, runs] : site_runs(region)) run_violations += runs != 1;
  }
};

Tally tally;

std::map<std::string, std::string> fields(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (const auto eq = tok.find('='); eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

Point parse_point(const std::string& s) {
  Point p;
  std::sscanf(s.c_str(), "(%lf,%lf)", &p.x, &p.y);
  return p;
}

Verdict square_two_center() {
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun run = run_cli("twocenter " + fixture("square.txt") + " --eps 1e-7");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto kv = fields(run.out);
  const double r = std::strtod(kv["radius"].c_str(), nullptr);
  const Point c1 = parse_point(kv["c1"]), c2 = parse_point(kv["c2"]);
  const double asym = dist(lerp(c1, c2, 0.5), {0.5, 0.5});
  const double err = std::abs(r - std::sqrt(5.0) / 4);
  Verdict v;
  v.pass = run.code == 0 && err <= 1e-6 && asym <= 1e-4 && secs < 5.0;
  v.detail = "radius=" + fmt("%.9f", r) + " |err|=" + fmt("%.2e", err) + " asym=" + fmt("%.2e", asym) +
             " runtime=" + fmt("%.2f", secs) + "s";
  return v;
}

Verdict distance_oracle() {
  double worst = 0.0;
  int pairs = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = 8 + (k * 13) % 33;
    const PolygonDomain dom(random_polygon(n, 10000 + k));
    tally.candidates(dom);
    const VisibilityGraph vis(dom.polygon());
    const auto pts = interior_points(dom.polygon(), 20, 10000 + k);
    for (int p = 0; p < 10; ++p) {
      worst = std::max(worst, std::abs(geodesic_distance(dom, pts[2 * p], pts[2 * p + 1]) -
                                       vis.distance(pts[2 * p], pts[2 * p + 1])));
      ++pairs;
    }
  }
  return {worst <= 1e-9, "pairs=" + std::to_string(pairs) + " max|diff|=" + fmt("%.2e", worst)};
}

Verdict one_center_checks() {
  const PolygonDomain ls(fixtures::lshape());
  tally.candidates(ls);
  const OneCenterResult oc = one_center(ls);
  const double center_err = dist(oc.center, {1, 1});
  const double radius_err = std::abs(oc.radius - std::sqrt(2.0));
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const PolygonDomain dom(random_polygon(8 + (k * 7) % 25, 11000 + k));
    worst = std::max(worst, std::abs(one_center(dom).radius - grid_one_center(dom, 128).radius));
  }
  Verdict v;
  v.pass = center_err <= 1e-4 && radius_err <= 1e-6 && worst <= 2e-5;
  v.detail = "lshape center_err=" + fmt("%.2e", center_err) + " radius_err=" + fmt("%.2e", radius_err) +
             " grid max|diff|=" + fmt("%.2e", worst);
  return v;
}

Verdict monotonicity() {
  std::mt19937_64 rng(12000);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8 + trial % 25;
    const PolygonDomain dom(random_polygon(n, 12000 + trial));
    tally.candidates(dom);
    const std::vector<CandidatePair> pairs = candidate_pairs(dom);
    const CandidatePair pair = pairs[rng() % pairs.size()];
    const DecisionContext ctx(dom, pair);
    std::uniform_real_distribution<double> pick(ctx.lower_bound() * 0.97, ctx.upper_bound() * 1.03);
    double r = pick(rng), r2 = pick(rng);
    if (r > r2) std::swap(r, r2);
    const DecisionOutcome a = decide(ctx, pair, r), b = decide(ctx, pair, r2);
    tally.stats += a.stats;
    tally.stats += b.stats;
    violations += a.yes && !b.yes;
    for (int side : {1, 2}) {
      const int sites = static_cast<int>(ctx.chain(side).size());
      tally.intersection(coverage_profile(ctx, side, r).region, n, sites);
      tally.intersection(coverage_profile(ctx, side, r2).region, n, sites);
    }
  }
  return {violations == 0, "trials=100 violations=" + std::to_string(violations)};
}

struct Solved {
  std::unique_ptr<PolygonDomain> dom;
  TwoCenterResult res;
};

std::vector<Solved> desk_polygons;

void solve_desk_polygons() {
  for (int k = 0; k < 10; ++k) {
    Solved s;
    s.dom = std::make_unique<PolygonDomain>(random_polygon(8 + (k * 5) % 17, 13000 + k));
    tally.candidates(*s.dom);
    s.res = solve(*s.dom, 1e-7);
    tally.stats += s.res.stats;
    desk_polygons.push_back(std::move(s));
  }
}

Verdict candidate_sufficiency() {
  double worst = 0.0;
  for (const Solved& s : desk_polygons) {
    const PolygonDomain& dom = *s.dom;
    const int n = dom.size();
    std::vector<double> best(n * n, 1e300);
    parallel_for(n * n, [&](int k) {
      const int i = k / n, j = k % n;
      if (i != j) best[k] = optimize_pair(dom, {i, j, PairKind::Type1}, 1e-7).radius;
    });
    worst = std::max(worst, std::abs(s.res.radius - *std::min_element(best.begin(), best.end())));
  }
  return {worst <= 1e-6, "polygons=10 max|candidates-all|=" + fmt("%.2e", worst)};
}

Verdict structural_bounds() {
  tally.candidates(PolygonDomain(fixtures::square()));
  Verdict v;
  v.pass = tally.candidate_violations == 0 && tally.arc_violations == 0 && tally.run_violations == 0 &&
           tally.intersections > 0;
  v.detail = "candidate_sets=" + std::to_string(tally.candidate_sets) +
             " count_violations=" + std::to_string(tally.candidate_violations) +
             " intersections=" + std::to_string(tally.intersections) +
             " arc_violations=" + std::to_string(tally.arc_violations) +
             " run_violations=" + std::to_string(tally.run_violations);
  return v;
}

Verdict coverage_certificate() {
  std::vector<const PolygonDomain*> doms;
  std::vector<TwoCenterResult> results;
  const PolygonDomain sq(fixtures::square()), ls(fixtures::lshape());
  for (const PolygonDomain* d : {&sq, &ls}) {
    doms.push_back(d);
    results.push_back(solve(*d, 1e-7));
    tally.stats += results.back().stats;
  }
  for (const Solved& s : desk_polygons) {
    doms.push_back(s.dom.get());
    results.push_back(s.res);
  }
  double worst_cover = -1e300, worst_one = -1e300;
  for (std::size_t k = 0; k < doms.size(); ++k) {
    const PolygonDomain& dom = *doms[k];
    const TwoCenterResult& r = results[k];
    const std::vector<Point> pts = halton_points(dom.polygon(), 10000);
    std::vector<double> excess(pts.size());
    parallel_for(static_cast<int>(pts.size()), [&](int q) {
      excess[q] = std::min(geodesic_distance(dom, r.c1, pts[q]), geodesic_distance(dom, r.c2, pts[q])) - r.radius;
    });
    worst_cover = std::max(worst_cover, *std::max_element(excess.begin(), excess.end()));
    worst_one = std::max(worst_one, r.radius - one_center(dom).radius);
  }
  Verdict v;
  v.pass = worst_cover <= 1e-6 && worst_one <= 1e-9;
  v.detail = "solves=" + std::to_string(doms.size()) + " max(cover-r)=" + fmt("%.2e", worst_cover) +
             " max(r-one_center)=" + fmt("%.2e", worst_one);
  return v;
}

Verdict oracle_sandwich() {
  double lo = 1e300, hi = -1e300;
  for (const Solved& s : desk_polygons) {
    const double d = sampled_two_center(*s.dom, 4 * s.dom->size(), true).radius - s.res.radius;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo >= -2e-5 && hi <= 5e-2, "oracle-solve in [" + fmt("%.2e", lo) + ", " + fmt("%.2e", hi) + "]"};
}

Verdict monotone_coverage() {
  const DecisionStats& s = tally.stats;
  Verdict v;
  v.pass = s.inversions == 0 && s.mu_inversions == 0 && s.decisions > 0;
  v.detail = "decisions=" + std::to_string(s.decisions) + " events=" + std::to_string(s.events) +
             " mu_sequences=" + std::to_string(s.mu_sequences) + " inversions=" + std::to_string(s.inversions) +
             " mu_inversions=" + std::to_string(s.mu_inversions);
  return v;
}

std::string transcript() {
  const std::string sq = fixture("square.txt"), ls = fixture("lshape.txt");
  const std::vector<std::string> commands{
      "dist " + sq + " 0 0 1 1",
      "dist " + ls + " 0.5 1.75 1.75 0.5",
      "path " + ls + " 0.5 1.75 1.75 0.5 --svg transcript_path.svg",
      "disk " + ls + " 1.75 0.25 1.2",
      "onecenter " + ls + " --oracle-grid 64",
      "twocenter " + sq + " --eps 1e-7 --oracle-samples 64 --svg transcript_two.svg",
      "twocenter " + ls + " --threads 4",
      "twocenter random:14 --seed 7",
      "decide " + sq + " 0 2 0.60",
      "decide " + sq + " 0 2 0.50",
      "candidates " + ls,
      "render " + sq + " --what fvd --svg transcript_fvd.svg",
      "render " + sq + " --what intersection --radius 0.8 --svg transcript_lens.svg",
      "dist missing.txt 0 0 1 1",
  };
  std::string out;
  for (const std::string& c : commands) {
    const CliRun r = run_cli(c, true);
    out += "$ geocenter " + c + "\n" + r.out + "exit=" + std::to_string(r.code) + "\n";
  }
  for (const char* svg : {"transcript_path.svg", "transcript_two.svg", "transcript_fvd.svg", "transcript_lens.svg"}) {
    std::ifstream f(svg, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    out += "== " + std::string(svg) + " (" + std::to_string(ss.str().size()) + " bytes)\n" + ss.str();
  }
  return out;
}

Verdict determinism() {
  const std::string first = transcript();
  const std::string second = transcript();
  std::ofstream("cli_transcript.txt", std::ios::binary) << first;
  const bool same = first == second;
  return {same && !first.empty(), std::string(same ? "identical" : "differ") + " transcripts of " +
                                      std::to_string(first.size()) + " bytes (cli_transcript.txt)"};
}

}  // namespace

int main() {
  report(1, square_two_center());
  report(2, distance_oracle());
  report(3, one_center_checks());
  report(4, monotonicity());
  solve_desk_polygons();
  report(5, candidate_sufficiency());
  const Verdict cover = coverage_certificate();  // adds the fixture solves to the tallies
  report(6, structural_bounds());
  report(7, cover);
  report(8, oracle_sandwich());
  report(9, monotone_coverage());
  report(10, determinism());
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
