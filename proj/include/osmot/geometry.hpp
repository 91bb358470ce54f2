#ifndef OSMOT_GEOMETRY_HPP
#define OSMOT_GEOMETRY_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace osmot {

template <typename Scalar>
using Point2T = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Point2T<double>;

/// Per-triangle primitives for nodes (x0, x1, x2).
/// Edge naming: a = |x1 - x0|, b = |x2 - x1|, c = |x0 - x2|.
template <typename Scalar>
struct TriangleGeometryT {
  Scalar a{0}, b{0}, c{0};
  Scalar s{0};
  Scalar area_signed{0};
  Scalar area_abs{0};
  Scalar r{0};
  Scalar R{0};
  bool degenerate{false};
};

using TriangleGeometry = TriangleGeometryT<double>;

/// Half the determinant of [x1 - x0, x2 - x0]; positive for counter-clockwise nodes.
template <typename Scalar>
Scalar signed_area(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1, const Point2T<Scalar>& p2) {
  const Scalar det = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  return det / Scalar(2);
}

template <typename Scalar>
std::tuple<Scalar, Scalar, Scalar> edge_lengths(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1,
                                                const Point2T<Scalar>& p2) {
  return {(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()};
}

/// Area threshold below which a triangle with longest edge `max_edge` is degenerate.
template <typename Scalar>
Scalar degenerate_area_eps(Scalar max_edge) {
  return Scalar(1e-14) * max_edge * max_edge;
}

template <typename Scalar>
TriangleGeometryT<Scalar> triangle_geometry(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1,
                                            const Point2T<Scalar>& p2) {
  TriangleGeometryT<Scalar> g;
  std::tie(g.a, g.b, g.c) = edge_lengths(p0, p1, p2);
  g.s = (g.a + g.b + g.c) / Scalar(2);
  g.area_signed = signed_area(p0, p1, p2);
  g.area_abs = std::abs(g.area_signed);

  const Scalar max_edge = std::max({g.a, g.b, g.c});
  const Scalar abc = g.a * g.b * g.c;
  if (g.area_abs <= degenerate_area_eps(max_edge)) {
    g.degenerate = true;
    g.r = Scalar(0);
    // Circumradius of a zero-area triangle with distinct nodes is unbounded.
    g.R = abc > Scalar(0) ? std::numeric_limits<Scalar>::infinity() : Scalar(0);
    return g;
  }
  g.r = g.area_abs / g.s;
  g.R = abc / (Scalar(4) * g.area_abs);
  return g;
}

/// Heron's radical; used only as an independent cross-check of the determinant area.
template <typename Scalar>
Scalar heron_area(const TriangleGeometryT<Scalar>& g) {
  const Scalar prod = g.s * (g.s - g.a) * (g.s - g.b) * (g.s - g.c);
  return std::sqrt(std::max(prod, Scalar(0)));
}

}  // namespace osmot

#endif  // OSMOT_GEOMETRY_HPP
