#ifndef OSMOT_BOUNDARY_HPP
#define OSMOT_BOUNDARY_HPP

#include "osmot/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace osmot {

/// Boundary node P0 with its chain neighbours P1 (before) and P2 (after).
template <typename Scalar>
struct BoundaryTripleT {
  Point2T<Scalar> p1, p0, p2;
};

using BoundaryTriple = BoundaryTripleT<double>;

class CoincidentNeighbors : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadratic interpolation weights (N0, N1, N2) for the curve through
/// P1 (xi = -1), P0 (xi = 0) and P2 (xi = 1).
template <typename Scalar>
std::array<Scalar, 3> shape_functions(Scalar xi) {
  xi = std::clamp(xi, Scalar(-1), Scalar(1));
  const Scalar xi2 = xi * xi;
  return {Scalar(1) - xi2, (xi2 - xi) / Scalar(2), (xi2 + xi) / Scalar(2)};
}

/// Natural coordinate that equalizes the distances to both neighbours.
template <typename Scalar>
Scalar equalizing_coordinate(const BoundaryTripleT<Scalar>& t) {
  const Scalar d1 = (t.p1 - t.p0).norm();
  const Scalar d2 = (t.p2 - t.p0).norm();
  const Scalar scale = std::max({t.p0.cwiseAbs().maxCoeff(), t.p1.cwiseAbs().maxCoeff(), t.p2.cwiseAbs().maxCoeff()});
  if (d1 + d2 <= Scalar(1e-14) * scale || d1 + d2 == Scalar(0))
    throw CoincidentNeighbors("boundary node coincides with both of its neighbours");
  return (d2 - d1) / (d1 + d2);
}

template <typename Scalar>
Point2T<Scalar> smooth_boundary_node(const BoundaryTripleT<Scalar>& t) {
  const auto n = shape_functions(equalizing_coordinate(t));
  return n[0] * t.p0 + n[1] * t.p1 + n[2] * t.p2;
}

/// min/max of the two neighbour distances; 1 when P0 sits midway.
template <typename Scalar>
Scalar boundary_quality(const BoundaryTripleT<Scalar>& t) {
  const Scalar d1 = (t.p1 - t.p0).norm();
  const Scalar d2 = (t.p2 - t.p0).norm();
  const Scalar hi = std::max(d1, d2);
  if (hi == Scalar(0)) return Scalar(0);
  return std::min(d1, d2) / hi;
}

}  // namespace osmot

#endif  // OSMOT_BOUNDARY_HPP
