#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geocenter/disks.hpp"
#include "geocenter/geodesic.hpp"
#include "geocenter/onecenter.hpp"
#include "geocenter/oracle.hpp"
#include "geocenter/twocenter.hpp"
#include "geocenter/voronoi.hpp"
#include "render.hpp"

using namespace geocenter;
using geocenter::tools::Label;
using geocenter::tools::Marker;
using geocenter::tools::Outline;
using geocenter::tools::Polyline;
using geocenter::tools::RenderScene;
using geocenter::tools::Ring;

namespace {

constexpr int kInputError = 2;
constexpr int kDomainError = 3;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string pt(const Point& p) { return "(" + fixed(p.x) + "," + fixed(p.y) + ")"; }

std::string coord(const BoundaryCoord& c) { return "(" + std::to_string(c.edge) + "," + fixed(c.t) + ")"; }

std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "]";
}

struct Options {
  std::string polygon;
  double eps = 1e-7;
  int oracle_grid = 0;
  int oracle_samples = 0;
  std::string svg;
  int threads = 1;
  std::uint64_t seed = 1;
};

// "random:N" draws a seeded random polygon instead of reading a file.
SimplePolygon load(const Options& opt) {
  const std::string prefix = "random:";
  if (opt.polygon.starts_with(prefix)) {
    int n = 0;
    try {
      n = std::stoi(opt.polygon.substr(prefix.size()));
    } catch (const std::exception&) {
      throw GeometryError(ErrorKind::Parse, "bad random polygon size in '" + opt.polygon + "'");
    }
    if (n < 3) throw GeometryError(ErrorKind::TooFewVertices, "random polygon needs at least 3 vertices");
    return random_polygon(n, opt.seed);
  }
  return load_polygon(opt.polygon);
}

std::vector<int> parse_sites(const std::string& text, int n) {
  std::vector<int> sites;
  if (text == "all") {
    sites.resize(n);
    std::iota(sites.begin(), sites.end(), 0);
    return sites;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0 || v >= n) {
      throw GeometryError(ErrorKind::Parse, "bad site index '" + tok + "'");
    }
    sites.push_back(v);
  }
  if (sites.empty()) throw GeometryError(ErrorKind::Parse, "empty site list");
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

Outline outline_of(const DiskIntersection& region, const SimplePolygon& poly) {
  Outline o;
  if (region.full) {
    for (int k = 0; k < poly.size(); ++k) {
      ArcPiece a;
      a.circular = false;
      a.edge = k;
      a.start = poly.vertex(k);
      a.end = poly.vertex(k + 1);
      o.pieces.push_back(a);
    }
  } else if (region.has_boundary()) {
    o.pieces = region.arcs;
  }
  return o;
}

RenderScene base_scene(const SimplePolygon& poly) {
  RenderScene scene;
  auto& layer = scene.add_layer("polygon", "#222222", "#f4f4f4");
  layer.items.push_back(Ring{{poly.vertices().begin(), poly.vertices().end()}});
  return scene;
}

bool closed(const DiskIntersection& region) {
  if (!region.has_boundary()) return false;
  for (std::size_t k = 0; k < region.arcs.size(); ++k) {
    const ArcPiece& next = region.arcs[(k + 1) % region.arcs.size()];
    if (dist(region.arcs[k].end, next.start) > 1e-9) return false;
  }
  return true;
}

std::string region_summary(const DiskIntersection& region) {
  std::ostringstream out;
  out << "empty=" << region.empty << " single_point=" << region.single_point << " full=" << region.full
      << " arcs=" << region.arcs.size() << " circular=" << region.circular_arc_count()
      << " closed=" << closed(region);
  return out.str();
}

int cmd_dist(const Options& opt, const Point& a, const Point& b) {
  const PolygonDomain dom(load(opt));
  const GeodesicPath path = shortest_path(dom, a, b);
  std::string anchors = "[";
  for (std::size_t k = 0; k < path.anchors.size(); ++k) {
    const Point& v = dom.polygon().vertex(path.anchors[k]);
    anchors += (k ? "," : "") + std::string("(") + short_num(v.x) + "," + short_num(v.y) + ")";
  }
  std::cout << "distance=" << fixed(path.length) << " anchors=" << anchors << "]\n";
  return 0;
}

int cmd_path(const Options& opt, const Point& a, const Point& b) {
  const PolygonDomain dom(load(opt));
  const GeodesicPath path = shortest_path(dom, a, b);
  const std::vector<Point> pts = path.points(dom.polygon());
  std::string list = "[";
  for (std::size_t k = 0; k < pts.size(); ++k) list += (k ? "," : "") + pt(pts[k]);
  std::cout << "length=" << fixed(path.length) << " anchors=" << int_list(path.anchors) << " points=" << list
            << "]\n";
  if (!opt.svg.empty()) {
    RenderScene scene = base_scene(dom.polygon());
    scene.add_layer("path", "#c03030").items.push_back(Polyline{pts});
    auto& ends = scene.add_layer("endpoint", "#c03030");
    ends.items.push_back(Marker{a});
    ends.items.push_back(Marker{b});
    scene.write(opt.svg);
  }
  return 0;
}

int cmd_disk(const Options& opt, const Point& c, double r) {
  const PolygonDomain dom(load(opt));
  const GeodesicDisk disk = geodesic_disk(dom, c, r);
  std::cout << "center=" << pt(c) << " radius=" << fixed(r) << " " << region_summary(disk.region) << "\n";
  if (!opt.svg.empty()) {
    RenderScene scene = base_scene(dom.polygon());
    scene.add_layer("disk", "#3060c0", "#3060c033").items.push_back(outline_of(disk.region, dom.polygon()));
    scene.add_layer("center", "#3060c0").items.push_back(Marker{c});
    scene.write(opt.svg);
  }
  return 0;
}

int cmd_onecenter(const Options& opt) {
  const PolygonDomain dom(load(opt));
  const OneCenterResult oc = one_center(dom);
  std::cout << "center=" << pt(oc.center) << " radius=" << fixed(oc.radius)
            << " witnesses=" << int_list(oc.witnesses);
  if (opt.oracle_grid > 0) {
    const GridCenter grid = grid_one_center(dom, opt.oracle_grid);
    std::cout << " oracle_radius=" << fixed(grid.radius) << " oracle_delta=" << fixed(std::abs(grid.radius - oc.radius));
  }
  std::cout << "\n";
  if (!opt.svg.empty()) {
    RenderScene scene = base_scene(dom.polygon());
    const GeodesicDisk disk = geodesic_disk(dom, oc.center, oc.radius);
    scene.add_layer("disk", "#3060c0").items.push_back(outline_of(disk.region, dom.polygon()));
    scene.add_layer("center", "#3060c0").items.push_back(Marker{oc.center});
    scene.write(opt.svg);
  }
  return 0;
}

void render_two_center(const PolygonDomain& dom, const TwoCenterResult& res, const std::string& file) {
  const SimplePolygon& poly = dom.polygon();
  RenderScene scene = base_scene(poly);
  auto& disks = scene.add_layer("disk", "#3060c0", "#3060c022");
  for (const Point& c : {res.c1, res.c2}) disks.items.push_back(outline_of(geodesic_disk(dom, c, res.radius).region, poly));
  const Point a = poly.point_at(res.alpha), b = poly.point_at(res.beta);
  scene.add_layer("partition", "#c03030").items.push_back(Polyline{shortest_path(dom, a, b).points(poly)});
  auto& centers = scene.add_layer("center", "#103080");
  centers.items.push_back(Marker{res.c1});
  centers.items.push_back(Marker{res.c2});
  auto& labels = scene.add_layer("label", "#103080");
  labels.items.push_back(Label{res.c1, "c1"});
  labels.items.push_back(Label{res.c2, "c2"});
  scene.write(file);
}

int cmd_twocenter(const Options& opt) {
  if (!(opt.eps > 0)) throw GeometryError(ErrorKind::Parse, "--eps must be positive");
  const PolygonDomain dom(load(opt));
  const TwoCenterResult res = solve(dom, opt.eps, opt.threads);
  std::cout << "radius=" << fixed(res.radius) << " c1=" << pt(res.c1) << " c2=" << pt(res.c2)
            << " alpha=" << coord(res.alpha) << " beta=" << coord(res.beta) << " pair=(" << res.pair.i << ","
            << res.pair.j << ") configuration=" << res.configuration;
  if (opt.oracle_samples > 0) {
    const SampledTwoCenter oracle = sampled_two_center(dom, std::max(opt.oracle_samples, 4 * dom.size()));
    std::cout << " oracle_radius=" << fixed(oracle.radius) << " oracle_delta=" << fixed(oracle.radius - res.radius);
  }
  std::cout << "\n";
  if (!opt.svg.empty()) render_two_center(dom, res, opt.svg);
  return 0;
}

int cmd_decide(const Options& opt, int i, int j, double r) {
  const PolygonDomain dom(load(opt));
  const int n = dom.size();
  if (i < 0 || i >= n || j < 0 || j >= n || i == j) {
    throw GeometryError(ErrorKind::ContextMismatch, "edge indices must be distinct and in [0, n)");
  }
  if (!std::isfinite(r) || r < 0) throw GeometryError(ErrorKind::NegativeRadius, "radius must be nonnegative");
  const std::vector<CandidatePair> cands = candidate_pairs(dom);
  const auto it = std::find_if(cands.begin(), cands.end(), [&](const CandidatePair& p) { return p.i == i && p.j == j; });
  CandidatePair pair{i, j, PairKind::Type1};
  if (it == cands.end()) {
    std::cerr << "warning: (" << i << "," << j << ") is not a candidate pair\n";
  } else {
    pair = *it;
  }
  const DecisionContext ctx(dom, pair);
  const DecisionOutcome out = decide(ctx, pair, r);
  if (out.yes && out.witness) {
    const Witness& w = *out.witness;
    std::cout << "decision=yes c1=" << pt(w.c1) << " c2=" << pt(w.c2) << " alpha=" << coord(w.alpha)
              << " beta=" << coord(w.beta) << "\n";
  } else {
    std::cout << "decision=" << (out.yes ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_candidates(const Options& opt) {
  const PolygonDomain dom(load(opt));
  const std::vector<CandidatePair> pairs = candidate_pairs(dom);
  std::cout << "count=" << pairs.size() << " n=" << dom.size() << "\n";
  for (const CandidatePair& p : pairs) {
    std::cout << "pair=(" << p.i << "," << p.j << ") kind=" << (p.kind == PairKind::Type1 ? 1 : 2) << "\n";
  }
  return 0;
}

struct RenderArgs {
  std::string what;
  std::vector<double> center;
  double radius = -1;
  std::string sites = "all";
};

int cmd_render(const Options& opt, const RenderArgs& args) {
  if (opt.svg.empty()) throw GeometryError(ErrorKind::Parse, "render needs --svg");
  const PolygonDomain dom(load(opt));
  const SimplePolygon& poly = dom.polygon();
  RenderScene scene = base_scene(poly);

  if (args.what == "fvd") {
    const FarthestVoronoi fvd = farthest_voronoi(dom, parse_sites(args.sites, dom.size()));
    auto& edges = scene.add_layer("fvd-edge", "#208040");
    for (const VoronoiEdge& e : fvd.edges()) edges.items.push_back(Polyline{e.points});
    auto& verts = scene.add_layer("fvd-vertex", "#208040");
    for (const VoronoiVertex& v : fvd.vertices()) verts.items.push_back(Marker{v.p});
    std::cout << "vertices=" << fvd.vertices().size() << " edges=" << fvd.edges().size() << "\n";
    for (const VoronoiVertex& v : fvd.vertices()) {
      std::cout << "vertex=" << pt(v.p) << " dist=" << fixed(v.dist) << " sites=" << int_list(v.sites)
                << " boundary=" << v.on_boundary << "\n";
    }
  } else if (args.what == "disk") {
    if (args.center.size() != 2 || args.radius < 0) {
      throw GeometryError(ErrorKind::Parse, "render disk needs --center X Y and --radius R");
    }
    const Point c{args.center[0], args.center[1]};
    const GeodesicDisk disk = geodesic_disk(dom, c, args.radius);
    scene.add_layer("disk", "#3060c0", "#3060c033").items.push_back(outline_of(disk.region, poly));
    scene.add_layer("center", "#3060c0").items.push_back(Marker{c});
    std::cout << region_summary(disk.region) << "\n";
  } else if (args.what == "intersection") {
    if (args.radius < 0) throw GeometryError(ErrorKind::Parse, "render intersection needs --radius R");
    const DiskIntersection region = disks_intersection(dom, parse_sites(args.sites, dom.size()), args.radius);
    auto& layer = scene.add_layer("intersection", "#c07020", "#c0702033");
    if (region.single_point) {
      layer.items.push_back(Marker{region.point});
    } else {
      layer.items.push_back(outline_of(region, poly));
    }
    std::cout << region_summary(region) << "\n";
  } else {
    throw GeometryError(ErrorKind::Parse, "unknown --what '" + args.what + "'");
  }
  scene.write(opt.svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic centers of simple polygons"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for random:N polygons")->capture_default_str();

  auto polygon_arg = [&](CLI::App* sub) {
    sub->add_option("polygon", opt.polygon, "polygon file, or random:N")->required();
  };
  auto svg_opt = [&](CLI::App* sub) { sub->add_option("--svg", opt.svg, "write an SVG picture"); };

  std::vector<double> pts;
  auto* dist_cmd = app.add_subcommand("dist", "geodesic distance between two points");
  polygon_arg(dist_cmd);
  dist_cmd->add_option("coords", pts, "x1 y1 x2 y2")->expected(4)->required();

  auto* path_cmd = app.add_subcommand("path", "shortest path between two points");
  polygon_arg(path_cmd);
  path_cmd->add_option("coords", pts, "x1 y1 x2 y2")->expected(4)->required();
  svg_opt(path_cmd);

  double radius = 0.0;
  auto* disk_cmd = app.add_subcommand("disk", "geodesic disk around a point");
  polygon_arg(disk_cmd);
  disk_cmd->add_option("disk", pts, "x y r")->expected(3)->required();
  svg_opt(disk_cmd);

  auto* one_cmd = app.add_subcommand("onecenter", "geodesic 1-center");
  polygon_arg(one_cmd);
  one_cmd->add_option("--oracle-grid", opt.oracle_grid, "compare with a grid search of this resolution")
      ->check(CLI::Range(8, 4096));
  svg_opt(one_cmd);

  auto* two_cmd = app.add_subcommand("twocenter", "geodesic 2-center");
  polygon_arg(two_cmd);
  two_cmd->add_option("--eps", opt.eps, "radius tolerance")->capture_default_str();
  two_cmd->add_option("--threads", opt.threads, "worker threads over candidate pairs")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  two_cmd->add_option("--oracle-samples", opt.oracle_samples, "compare with sampled boundary partitions")
      ->check(CLI::Range(1, 1 << 16));
  svg_opt(two_cmd);

  int edge_i = 0, edge_j = 0;
  auto* decide_cmd = app.add_subcommand("decide", "decision for one edge pair and radius");
  polygon_arg(decide_cmd);
  decide_cmd->add_option("i", edge_i)->required();
  decide_cmd->add_option("j", edge_j)->required();
  decide_cmd->add_option("r", radius)->required();

  auto* cand_cmd = app.add_subcommand("candidates", "candidate edge pairs");
  polygon_arg(cand_cmd);

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "SVG of a Voronoi diagram, disk or disk intersection");
  polygon_arg(render_cmd);
  render_cmd->add_option("--what", render.what)->required()->check(CLI::IsMember({"fvd", "disk", "intersection"}));
  render_cmd->add_option("--center", render.center, "disk center")->expected(2);
  render_cmd->add_option("--radius", render.radius);
  render_cmd->add_option("--sites", render.sites, "all, or comma-separated vertex indices")->capture_default_str();
  svg_opt(render_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*dist_cmd) return cmd_dist(opt, {pts[0], pts[1]}, {pts[2], pts[3]});
    if (*path_cmd) return cmd_path(opt, {pts[0], pts[1]}, {pts[2], pts[3]});
    if (*disk_cmd) return cmd_disk(opt, {pts[0], pts[1]}, pts[2]);
    if (*one_cmd) return cmd_onecenter(opt);
    if (*two_cmd) return cmd_twocenter(opt);
    if (*decide_cmd) return cmd_decide(opt, edge_i, edge_j, radius);
    if (*cand_cmd) return cmd_candidates(opt);
    if (*render_cmd) return cmd_render(opt, render);
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_domain_error() ? kDomainError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
