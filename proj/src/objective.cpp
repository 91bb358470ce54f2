#include "osmot/objective.hpp"

namespace osmot {

namespace {

ObjectiveParams element_params(const Mesh& mesh, TriangleId t, const ObjectiveParams& params) {
  ObjectiveParams p = params;
  p.r_ref = mesh.rref_or(t, params.r_ref);
  return p;
}

}  // namespace

double ball_objective(const Mesh& mesh, const Ball& ball, const Point2& x0, const ObjectiveParams& params) {
  double total = 0.0;
  for (const auto& e : ball.elements) {
    const auto n = mesh.rotated_nodes(e);
    total += element_objective(x0, mesh.position(n[1]), mesh.position(n[2]), element_params(mesh, e.triangle, params));
    if (std::isinf(total)) return total;
  }
  return total;
}

GradHess ball_grad_hess(const Mesh& mesh, const Ball& ball, const Point2& x0, const ObjectiveParams& params) {
  GradHess sum;
  for (const auto& e : ball.elements) {
    const auto n = mesh.rotated_nodes(e);
    try {
      sum += element_grad_hess(x0, mesh.position(n[1]), mesh.position(n[2]), element_params(mesh, e.triangle, params));
    } catch (const DegenerateElement& err) {
      throw DegenerateElement(std::string(err.what()) + " (triangle " + std::to_string(e.triangle) + ")", e.triangle);
    }
  }
  return sum;
}

}  // namespace osmot
