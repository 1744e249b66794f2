#include "geocenter/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace geocenter {
namespace {

// Error bound of the straightforward determinant (Shewchuk's ccwerrboundA).
constexpr double kOrientErrBound = 3.3306690738754716e-16;

inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  const double av = sum - bv;
  err = (a - av) + (b - bv);
}

struct Expansion {
  std::array<double, 16> terms{};
  int size = 0;

  void add(double b) {
    double q = b;
    int k = 0;
    for (int i = 0; i < size; ++i) {
      double s = 0.0;
      double h = 0.0;
      two_sum(q, terms[i], s, h);
      q = s;
      if (h != 0.0) terms[k++] = h;
    }
    if (q != 0.0 || k == 0) terms[k++] = q;
    size = k;
  }

  void add_product(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    add(e);
    add(p);
  }

  int sign() const {
    for (int i = size - 1; i >= 0; --i) {
      if (terms[i] > 0.0) return 1;
      if (terms[i] < 0.0) return -1;
    }
    return 0;
  }
};

int orientation_exact(const Point& a, const Point& b, const Point& c) {
  Expansion e;
  e.add_product(b.x, c.y);
  e.add_product(-b.x, a.y);
  e.add_product(-a.x, c.y);
  e.add_product(-b.y, c.x);
  e.add_product(b.y, a.x);
  e.add_product(a.y, c.x);
  return e.sign();
}

}  // namespace

int orientation(const Point& a, const Point& b, const Point& c) {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  const double bound = kOrientErrBound * (std::fabs(left) + std::fabs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orientation_exact(a, b, c);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool segments_cross_properly(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace geocenter
