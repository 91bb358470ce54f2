#include "osmot/local_newton.hpp"

#include <cmath>
#include <string>

namespace osmot {

Eigen::Vector2d descent_direction(const GradHess& gh, const NewtonConfig& cfg, bool* used_steepest) {
  const Eigen::Vector2d steepest = -gh.grad;
  auto fallback = [&] {
    if (used_steepest) *used_steepest = true;
    return steepest;
  };

  const double det = gh.hessian_det();
  if (!(det >= cfg.delta)) return fallback();

  // Cramer's rule on H d = -g.
  const Eigen::Vector2d newton(-(gh.hyy * gh.grad.x() - gh.hxy * gh.grad.y()) / det,
                               -(gh.hxx * gh.grad.y() - gh.hxy * gh.grad.x()) / det);
  const double denom = gh.grad.norm() * newton.norm();
  const double cos_theta = denom > 0.0 ? -gh.grad.dot(newton) / denom : -1.0;
  if (!(cos_theta >= cfg.eta)) return fallback();

  if (used_steepest) *used_steepest = false;
  return newton;
}

bool armijo_accept(double w_old, double w_new, double lambda, double grad_dot_d) {
  if (!std::isfinite(w_new)) return false;
  return w_new - w_old <= 0.5 * lambda * grad_dot_d;
}

LocalResult optimize_ball(const Mesh& mesh, const Ball& ball, const ObjectiveParams& params, const NewtonConfig& cfg,
                          std::vector<NewtonIterate>* history) {
  LocalResult result;
  Point2 x = mesh.position(ball.vertex);
  LocalStepTrace& trace = result.trace;

  GradHess gh;
  try {
    gh = ball_grad_hess(mesh, ball, x, params);
  } catch (const DegenerateElement& err) {
    throw DegenerateStart("degenerate ball at node " + std::to_string(ball.vertex) + ": " + err.what(), ball.vertex,
                          err.triangle());
  }

  double lambda = 1.0;
  for (int j = 0; j <= cfg.j_max; ++j) {
    trace.iterations = j;
    if (gh.grad.norm() < cfg.eps) {
      trace.converged = true;
      trace.stop = NewtonStop::Converged;
      break;
    }

    bool steepest = false;
    const Eigen::Vector2d d = descent_direction(gh, cfg, &steepest);
    if (steepest) ++trace.used_steepest_count;

    const Point2 trial = x + lambda * d;
    const double trial_value = ball_objective(mesh, ball, trial, params);
    const double grad_dot_d = gh.grad.dot(d);
    const bool accepted = armijo_accept(gh.value, trial_value, lambda, grad_dot_d);
    if (history) history->push_back({x, gh.value, gh.grad, d, lambda, trial_value, steepest, accepted});

    if (accepted) {
      x = trial;
      gh = ball_grad_hess(mesh, ball, x, params);
      ++trace.accepted_steps;
    } else {
      ++trace.armijo_rejections;
      lambda *= 0.5;
      if (lambda < cfg.lambda_min) {
        trace.stop = NewtonStop::StepTooSmall;
        break;
      }
    }
    trace.iterations = j + 1;
  }

  trace.final_grad_norm = gh.grad.norm();
  if (!trace.converged && trace.final_grad_norm < cfg.eps) {
    trace.converged = true;
    trace.stop = NewtonStop::Converged;
  }
  result.position = x;
  return result;
}

}  // namespace osmot
