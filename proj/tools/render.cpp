#include "render.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geocenter/errors.hpp"

namespace geocenter::tools {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

template <class F>
void visit_points(const Primitive& item, F&& f) {
  if (const auto* r = std::get_if<Ring>(&item)) {
    for (const Point& p : r->points) f(p);
  } else if (const auto* l = std::get_if<Polyline>(&item)) {
    for (const Point& p : l->points) f(p);
  } else if (const auto* o = std::get_if<Outline>(&item)) {
    for (const ArcPiece& a : o->pieces) {
      for (int k = 0; k <= 8; ++k) f(a.point_at(k / 8.0));
    }
  } else if (const auto* m = std::get_if<Marker>(&item)) {
    f(m->p);
  } else if (const auto* t = std::get_if<Label>(&item)) {
    f(t->p);
  }
}

// Maps polygon coordinates to screen pixels with y pointing down.
struct Frame {
  Point lo;
  Point hi;
  double scale = 1.0;

  Point map(const Point& p) const { return {(p.x - lo.x) * scale, (hi.y - p.y) * scale}; }
  std::string xy(const Point& p) const {
    const Point q = map(p);
    return num(q.x) + "," + num(q.y);
  }
};

std::string outline_path(const Frame& fr, const Outline& o) {
  std::ostringstream d;
  if (o.pieces.empty()) return "";
  d << "M" << fr.xy(o.pieces.front().start);
  for (const ArcPiece& a : o.pieces) {
    if (!a.circular) {
      d << " L" << fr.xy(a.end);
      continue;
    }
    // Split at the middle so each half spans at most pi; clockwise in the
    // plane stays clockwise on screen after the flip, which is sweep 1.
    const std::string rad = num(a.arc_radius * fr.scale);
    d << " A" << rad << "," << rad << " 0 0 1 " << fr.xy(a.point_at(0.5));
    d << " A" << rad << "," << rad << " 0 0 1 " << fr.xy(a.end);
  }
  d << " Z";
  return d.str();
}

}  // namespace

Layer& RenderScene::add_layer(std::string name, std::string stroke, std::string fill) {
  layers_.push_back({std::move(name), std::move(stroke), std::move(fill), {}});
  return layers_.back();
}

void RenderScene::viewport(Point* lo, Point* hi, double margin) const {
  Point a{1e300, 1e300}, b{-1e300, -1e300};
  for (const Layer& layer : layers_) {
    for (const Primitive& item : layer.items) {
      visit_points(item, [&](const Point& p) {
        a = {std::min(a.x, p.x), std::min(a.y, p.y)};
        b = {std::max(b.x, p.x), std::max(b.y, p.y)};
      });
    }
  }
  if (a.x > b.x) a = b = {0, 0};
  const double pad = margin * std::max({b.x - a.x, b.y - a.y, 1e-9});
  *lo = {a.x - pad, a.y - pad};
  *hi = {b.x + pad, b.y + pad};
}

std::string RenderScene::to_svg(int width_px) const {
  Frame fr;
  viewport(&fr.lo, &fr.hi);
  fr.scale = width_px / (fr.hi.x - fr.lo.x);
  const double height_px = (fr.hi.y - fr.lo.y) * fr.scale;
  const double stroke = std::max(width_px, static_cast<int>(height_px)) / 400.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
      << num(height_px) << "\" viewBox=\"0 0 " << width_px << " " << num(height_px) << "\">\n";
  for (const Layer& layer : layers_) {
    out << "<g class=\"" << escape(layer.name) << "\" stroke=\"" << layer.stroke << "\" fill=\""
        << layer.fill << "\" stroke-width=\"" << num(stroke) << "\">\n";
    for (const Primitive& item : layer.items) {
      if (const auto* r = std::get_if<Ring>(&item)) {
        out << "<polygon points=\"";
        for (std::size_t k = 0; k < r->points.size(); ++k) out << (k ? " " : "") << fr.xy(r->points[k]);
        out << "\"/>\n";
      } else if (const auto* l = std::get_if<Polyline>(&item)) {
        out << "<polyline points=\"";
        for (std::size_t k = 0; k < l->points.size(); ++k) out << (k ? " " : "") << fr.xy(l->points[k]);
        out << "\"/>\n";
      } else if (const auto* o = std::get_if<Outline>(&item)) {
        out << "<path class=\"" << escape(layer.name) << "\" d=\"" << outline_path(fr, *o) << "\"/>\n";
      } else if (const auto* m = std::get_if<Marker>(&item)) {
        const Point q = fr.map(m->p);
        out << "<circle class=\"" << escape(layer.name) << "\" cx=\"" << num(q.x) << "\" cy=\"" << num(q.y)
            << "\" r=\"" << num(3 * stroke) << "\" fill=\"" << layer.stroke << "\"/>\n";
      } else if (const auto* t = std::get_if<Label>(&item)) {
        const Point q = fr.map(t->p);
        out << "<text x=\"" << num(q.x) << "\" y=\"" << num(q.y) << "\" stroke=\"none\" fill=\""
            << layer.stroke << "\" font-size=\"" << num(8 * stroke) << "\">" << escape(t->text)
            << "</text>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void RenderScene::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GeometryError(ErrorKind::Parse, "cannot write '" + path + "'");
  f << to_svg();
}

}  // namespace geocenter::tools
