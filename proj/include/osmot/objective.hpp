#ifndef OSMOT_OBJECTIVE_HPP
#define OSMOT_OBJECTIVE_HPP

#include "osmot/geometry.hpp"
#include "osmot/mesh.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace osmot {

/// Weighting of w = (R / R_ref)^beta * (R / r)^gamma.
struct ObjectiveParams {
  double beta = 1.0;
  double gamma = 3.0;
  double r_ref = 1.0;

  bool has_exact_derivatives() const { return beta == 1.0 && gamma == 3.0; }

  void validate() const {
    if (!(beta > 0.0) || !(gamma > 0.0) || !(r_ref > 0.0))
      throw std::invalid_argument("objective exponents and reference radius must be positive");
  }
};

/// Objective value with gradient and Hessian with respect to the free node x0.
/// The Hessian is kept as its three distinct entries.
template <typename Scalar>
struct GradHessT {
  Scalar value{0};
  Eigen::Matrix<Scalar, 2, 1> grad = Eigen::Matrix<Scalar, 2, 1>::Zero();
  Scalar hxx{0}, hxy{0}, hyy{0};

  Eigen::Matrix<Scalar, 2, 2> hessian() const {
    Eigen::Matrix<Scalar, 2, 2> h;
    h << hxx, hxy, hxy, hyy;
    return h;
  }
  Scalar hessian_det() const { return hxx * hyy - hxy * hxy; }

  GradHessT& operator+=(const GradHessT& o) {
    value += o.value;
    grad += o.grad;
    hxx += o.hxx;
    hxy += o.hxy;
    hyy += o.hyy;
    return *this;
  }
};

using GradHess = GradHessT<double>;

class DegenerateElement : public std::runtime_error {
 public:
  explicit DegenerateElement(const std::string& what, int triangle = -1)
      : std::runtime_error(what), triangle_(triangle) {}
  int triangle() const { return triangle_; }

 private:
  int triangle_;
};

namespace detail {

template <typename Scalar>
bool feasible(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1, const Point2T<Scalar>& p2, Scalar& area) {
  area = signed_area(p0, p1, p2);
  const Scalar max_edge = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()});
  return area > degenerate_area_eps(max_edge);
}

// Shared by the value and derivative paths so both round identically.
template <typename Scalar>
Scalar exact_value(Scalar a, Scalar b, Scalar c, Scalar s, Scalar A, Scalar r_ref) {
  const Scalar abc = a * b * c;
  const Scalar abc2 = abc * abc;
  const Scalar A2 = A * A;
  const Scalar A4 = A2 * A2;
  return (abc2 * abc2) * (s * s * s) / (Scalar(256) * r_ref * (A4 * A2 * A));
}

}  // namespace detail

/// Element objective for the free node p0; +inf when the element is inverted
/// or degenerate, which turns the objective into a barrier.
template <typename Scalar>
Scalar element_objective(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1, const Point2T<Scalar>& p2,
                         const ObjectiveParams& params) {
  Scalar A;
  if (!detail::feasible(p0, p1, p2, A)) return std::numeric_limits<Scalar>::infinity();
  const Scalar a = (p1 - p0).norm();
  const Scalar b = (p2 - p1).norm();
  const Scalar c = (p0 - p2).norm();
  const Scalar s = (a + b + c) / Scalar(2);
  if (params.has_exact_derivatives()) return detail::exact_value(a, b, c, s, A, Scalar(params.r_ref));
  const Scalar R = a * b * c / (Scalar(4) * A);
  const Scalar r = A / s;
  return std::pow(R / Scalar(params.r_ref), Scalar(params.beta)) * std::pow(R / r, Scalar(params.gamma));
}

/// Closed-form value, gradient and Hessian of the (beta, gamma) = (1, 3)
/// objective. Throws DegenerateElement when the element is not strictly valid.
template <typename Scalar>
GradHessT<Scalar> element_grad_hess_exact(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1,
                                          const Point2T<Scalar>& p2, Scalar r_ref) {
  Scalar A;
  if (!detail::feasible(p0, p1, p2, A)) throw DegenerateElement("element is inverted or degenerate");

  const Scalar x0 = p0.x(), y0 = p0.y();
  const Scalar x1 = p1.x(), y1 = p1.y();
  const Scalar x2 = p2.x(), y2 = p2.y();
  const Scalar a = (p1 - p0).norm();
  const Scalar b = (p2 - p1).norm();
  const Scalar c = (p0 - p2).norm();
  if (!(a > Scalar(0)) || !(c > Scalar(0))) throw DegenerateElement("edge incident to the free node has zero length");
  const Scalar s = (a + b + c) / Scalar(2);
  const Scalar sa = s - a, sb = s - b, sc = s - c;

  // First derivatives of a, c, s, s - a, s - c (b does not depend on x0).
  const Scalar C1x = -(x1 - x0) / a, C1y = -(y1 - y0) / a;
  const Scalar C2x = (x0 - x2) / c, C2y = (y0 - y2) / c;
  const Scalar C3x = (C1x + C2x) / Scalar(2), C3y = (C1y + C2y) / Scalar(2);
  const Scalar C4x = C3x - C1x, C4y = C3y - C1y;
  const Scalar C5x = C3x - C2x, C5y = C3y - C2y;

  // Second derivatives.
  const Scalar D1x = (x1 - x0) / (a * a) * C1x + Scalar(1) / a;
  const Scalar D1y = (y1 - y0) / (a * a) * C1y + Scalar(1) / a;
  const Scalar D2x = -(x0 - x2) / (c * c) * C2x + Scalar(1) / c;
  const Scalar D2y = -(y0 - y2) / (c * c) * C2y + Scalar(1) / c;
  const Scalar D3x = (D1x + D2x) / Scalar(2), D3y = (D1y + D2y) / Scalar(2);
  const Scalar D4x = D3x - D1x, D4y = D3y - D1y;
  const Scalar D5x = D3x - D2x, D5y = D3y - D2y;
  const Scalar E1 = -(x1 - x0) * (y1 - y0) / (a * a * a);
  const Scalar E2 = -(x0 - x2) * (y0 - y2) / (c * c * c);
  const Scalar E3 = (E1 + E2) / Scalar(2);
  const Scalar E4 = E3 - E1;
  const Scalar E5 = E3 - E2;

  const Scalar abc = a * b * c;
  const Scalar abc2 = abc * abc;
  const Scalar abc3 = abc2 * abc;
  const Scalar P = abc3 * abc;  // (abc)^4
  const Scalar S = s * s * s;
  const Scalar A2 = A * A;
  const Scalar A4 = A2 * A2;
  const Scalar A7 = A4 * A2 * A;
  const Scalar A9 = A7 * A2;
  const Scalar Q = Scalar(1) / A7;  // A^-7
  const Scalar K = Scalar(1) / (Scalar(256) * r_ref);

  // (abc)^4
  const Scalar ux = c * C1x + a * C2x, uy = c * C1y + a * C2y;
  const Scalar Px = Scalar(4) * b * abc3 * ux;
  const Scalar Py = Scalar(4) * b * abc3 * uy;
  const Scalar Pxx = Scalar(12) * b * b * abc2 * ux * ux + Scalar(4) * b * abc3 * (c * D1x + a * D2x + Scalar(2) * C1x * C2x);
  const Scalar Pyy = Scalar(12) * b * b * abc2 * uy * uy + Scalar(4) * b * abc3 * (c * D1y + a * D2y + Scalar(2) * C1y * C2y);
  const Scalar Pxy = Scalar(12) * b * b * abc2 * ux * uy + Scalar(4) * b * abc3 * (c * E1 + C1x * C2y + C1y * C2x + a * E2);

  // s^3
  const Scalar Sx = Scalar(3) * s * s * C3x;
  const Scalar Sy = Scalar(3) * s * s * C3y;
  const Scalar Sxx = Scalar(6) * s * C3x * C3x + Scalar(3) * s * s * D3x;
  const Scalar Syy = Scalar(6) * s * C3y * C3y + Scalar(3) * s * s * D3y;
  const Scalar Sxy = Scalar(6) * s * C3x * C3y + Scalar(3) * s * s * E3;

  // A^-7 through Heron: A^2 = s (s-a)(s-b)(s-c), with d(s-b) = ds.
  const Scalar Gx = (Scalar(2) * s - b) * sa * sc * C3x + s * sb * sc * C4x + s * sa * sb * C5x;
  const Scalar Gy = (Scalar(2) * s - b) * sa * sc * C3y + s * sb * sc * C4y + s * sa * sb * C5y;
  const Scalar k7 = Scalar(7) / (Scalar(2) * A9);
  const Scalar Qx = -k7 * Gx;
  const Scalar Qy = -k7 * Gy;
  const Scalar Ax = -(A4 * A4) / Scalar(7) * Qx;
  const Scalar Ay = -(A4 * A4) / Scalar(7) * Qy;

  const Scalar Hxx = sa * (sb * (s * D5x + sc * D3x + Scalar(2) * C3x * C5x) + sc * (s * D3x + Scalar(2) * C3x * C3x) + Scalar(2) * s * C3x * C5x) +
                     sb * (sc * (s * D4x + Scalar(2) * C3x * C4x) + Scalar(2) * s * C4x * C5x) + Scalar(2) * s * sc * C3x * C4x;
  const Scalar Hyy = sa * (sb * (s * D5y + sc * D3y + Scalar(2) * C3y * C5y) + sc * (s * D3y + Scalar(2) * C3y * C3y) + Scalar(2) * s * C3y * C5y) +
                     sb * (sc * (s * D4y + Scalar(2) * C3y * C4y) + Scalar(2) * s * C4y * C5y) + Scalar(2) * s * sc * C3y * C4y;
  const Scalar Hxy = sa * (sb * (C3x * C5y + sc * E3 + C5x * C3y + s * E5) + sc * (Scalar(2) * C3x * C3y + s * E3) + s * (C5x * C3y + C3x * C5y)) +
                     s * sc * (C3x * C4y + C4x * C3y) + sb * (s * (C4x * C5y + C5x * C4y) + sc * (C3x * C4y + C4x * C3y + s * E4));
  const Scalar Qxx = Scalar(63) / A9 * Ax * Ax - k7 * Hxx;
  const Scalar Qyy = Scalar(63) / A9 * Ay * Ay - k7 * Hyy;
  const Scalar Qxy = Scalar(63) / A9 * Ax * Ay - k7 * Hxy;

  GradHessT<Scalar> out;
  out.value = detail::exact_value(a, b, c, s, A, r_ref);
  out.grad.x() = K * (S * Q * Px + P * Q * Sx + P * S * Qx);
  out.grad.y() = K * (S * Q * Py + P * Q * Sy + P * S * Qy);
  out.hxx = K * (S * Q * Pxx + P * Q * Sxx + P * S * Qxx + Scalar(2) * Q * Px * Sx + Scalar(2) * S * Px * Qx + Scalar(2) * P * Sx * Qx);
  out.hyy = K * (S * Q * Pyy + P * Q * Syy + P * S * Qyy + Scalar(2) * Q * Py * Sy + Scalar(2) * S * Py * Qy + Scalar(2) * P * Sy * Qy);
  out.hxy = K * (S * Q * Pxy + Q * Px * Sy + S * Px * Qy + Q * Py * Sx + P * Q * Sxy + P * Sx * Qy + S * Py * Qx + P * Sy * Qx +
                 S * P * Qxy);
  return out;
}

/// Finite-difference derivatives for exponent pairs without a closed form.
/// Accuracy is limited to roughly 1e-6 (gradient) and 1e-4 (Hessian) relative.
template <typename Scalar>
GradHessT<Scalar> element_grad_hess_numeric(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1,
                                            const Point2T<Scalar>& p2, const ObjectiveParams& params) {
  GradHessT<Scalar> out;
  out.value = element_objective(p0, p1, p2, params);
  if (!std::isfinite(static_cast<double>(out.value))) throw DegenerateElement("element is inverted or degenerate");
  const Scalar scale = std::max({(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()});
  const Scalar hg = Scalar(1e-6) * scale;
  const Scalar hh = Scalar(1e-4) * scale;
  auto f = [&](Scalar dx, Scalar dy) {
    return element_objective(Point2T<Scalar>(p0.x() + dx, p0.y() + dy), p1, p2, params);
  };
  out.grad.x() = (f(hg, 0) - f(-hg, 0)) / (Scalar(2) * hg);
  out.grad.y() = (f(0, hg) - f(0, -hg)) / (Scalar(2) * hg);
  out.hxx = (f(hh, 0) - Scalar(2) * out.value + f(-hh, 0)) / (hh * hh);
  out.hyy = (f(0, hh) - Scalar(2) * out.value + f(0, -hh)) / (hh * hh);
  out.hxy = (f(hh, hh) - f(hh, -hh) - f(-hh, hh) + f(-hh, -hh)) / (Scalar(4) * hh * hh);
  for (Scalar v : {out.grad.x(), out.grad.y(), out.hxx, out.hyy, out.hxy})
    if (!std::isfinite(static_cast<double>(v))) throw DegenerateElement("finite-difference stencil left the feasible region");
  return out;
}

template <typename Scalar>
GradHessT<Scalar> element_grad_hess(const Point2T<Scalar>& p0, const Point2T<Scalar>& p1, const Point2T<Scalar>& p2,
                                    const ObjectiveParams& params) {
  if (params.has_exact_derivatives()) return element_grad_hess_exact(p0, p1, p2, Scalar(params.r_ref));
  return element_grad_hess_numeric(p0, p1, p2, params);
}

/// Sum of element objectives over the ball with its vertex at x0.
/// Per-element reference radii stored on the mesh override params.r_ref.
double ball_objective(const Mesh& mesh, const Ball& ball, const Point2& x0, const ObjectiveParams& params);

/// Summed value, gradient and Hessian over the ball. Throws DegenerateElement
/// carrying the offending triangle id.
GradHess ball_grad_hess(const Mesh& mesh, const Ball& ball, const Point2& x0, const ObjectiveParams& params);

}  // namespace osmot

#endif  // OSMOT_OBJECTIVE_HPP
