#pragma once

#include <string>
#include <variant>
#include <vector>

#include "geocenter/disks.hpp"
#include "geocenter/point.hpp"

namespace geocenter::tools {

struct Ring {
  std::vector<Point> points;
};

struct Polyline {
  std::vector<Point> points;
};

// A closed outline made of disk-boundary pieces.
struct Outline {
  std::vector<ArcPiece> pieces;
};

struct Marker {
  Point p;
};

struct Label {
  Point p;
  std::string text;
};

using Primitive = std::variant<Ring, Polyline, Outline, Marker, Label>;

struct Layer {
  std::string name;  // used as the svg class
  std::string stroke;
  std::string fill = "none";
  std::vector<Primitive> items;
};

class RenderScene {
 public:
  Layer& add_layer(std::string name, std::string stroke, std::string fill = "none");

  // Bounding box of every primitive, grown by `margin` times the larger side.
  void viewport(Point* lo, Point* hi, double margin = 0.05) const;

  std::string to_svg(int width_px = 800) const;
  void write(const std::string& path) const;

 private:
  std::vector<Layer> layers_;
};

}  // namespace geocenter::tools
