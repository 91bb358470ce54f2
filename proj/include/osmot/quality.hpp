#ifndef OSMOT_QUALITY_HPP
#define OSMOT_QUALITY_HPP

#include "osmot/geometry.hpp"

#include <stdexcept>

namespace osmot {

struct QualityConfig {
  double r_ref_default = 1.0;
  double q_min = 0.6;
  int simplex_dim = 2;

  void validate() const {
    if (!(r_ref_default > 0.0)) throw std::invalid_argument("r_ref must be positive");
    if (!(q_min > 0.0 && q_min <= 1.0)) throw std::invalid_argument("q_min must lie in (0, 1]");
    if (simplex_dim != 2) throw std::invalid_argument("only triangles (simplex_dim = 2) are supported");
  }
};

/// Size measure R_ref / R. Degenerate elements score 0.
template <typename Scalar>
Scalar q1_size(const TriangleGeometryT<Scalar>& g, Scalar r_ref) {
  if (g.degenerate || !(g.R > Scalar(0))) return Scalar(0);
  return r_ref / g.R;
}

/// Normalized radius ratio 2 r / R, in [0, 1]; 1 for equilateral, 0 for degenerate.
template <typename Scalar>
Scalar q2_shape(const TriangleGeometryT<Scalar>& g) {
  if (g.degenerate || !(g.R > Scalar(0))) return Scalar(0);
  return Scalar(2) * g.r / g.R;
}

template <typename Scalar>
bool element_passes(const TriangleGeometryT<Scalar>& g, const QualityConfig& cfg) {
  return q2_shape(g) >= Scalar(cfg.q_min);
}

}  // namespace osmot

#endif  // OSMOT_QUALITY_HPP
