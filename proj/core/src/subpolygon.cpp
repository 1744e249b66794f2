#include "geocenter/subpolygon.hpp"

namespace geocenter {

SubPolygon subpolygon(const PolygonDomain& dom, const BoundaryCoord& u, const BoundaryCoord& w) {
  const SimplePolygon& poly = dom.polygon();
  const Point pu = poly.point_at(u);
  const Point pw = poly.point_at(w);
  if (pu == pw) throw GeometryError(ErrorKind::DegeneratePartition, "subpolygon endpoints coincide");
  SubPolygon sub;
  sub.parent = &poly;
  sub.chain = chain(poly, u, w);
  sub.closing_path = shortest_path(dom, pu, pw);
  sub.ring.push_back(pu);
  for (int v : sub.chain.vertex_indices) {
    if (poly.vertex(v) != pu && poly.vertex(v) != pw) sub.ring.push_back(poly.vertex(v));
  }
  sub.ring.push_back(pw);
  for (auto it = sub.closing_path.anchors.rbegin(); it != sub.closing_path.anchors.rend(); ++it) {
    sub.ring.push_back(poly.vertex(*it));
  }
  return sub;
}

}  // namespace geocenter
