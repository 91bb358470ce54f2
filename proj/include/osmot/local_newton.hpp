#ifndef OSMOT_LOCAL_NEWTON_HPP
#define OSMOT_LOCAL_NEWTON_HPP

#include "osmot/mesh.hpp"
#include "osmot/objective.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace osmot {

struct NewtonConfig {
  double eps = 1e-8;      // gradient-norm tolerance
  double delta = 1e-6;    // Hessian determinant tolerance
  double eta = 0.05;      // angle-criterion tolerance
  int j_max = 50;         // inner iteration cap
  double lambda_min = 8.673617379884035e-19;  // 2^-60

  void validate() const {
    if (!(eps > 0.0) || !(delta > 0.0) || !(eta > 0.0) || !(lambda_min > 0.0))
      throw std::invalid_argument("Newton tolerances must be positive");
    if (j_max < 1) throw std::invalid_argument("j_max must be at least 1");
  }
};

enum class NewtonStop { Converged, IterationLimit, StepTooSmall };

struct LocalStepTrace {
  int iterations = 0;
  int accepted_steps = 0;
  int used_steepest_count = 0;
  int armijo_rejections = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
  NewtonStop stop = NewtonStop::IterationLimit;
};

/// One pass through the inner loop, recorded on request.
struct NewtonIterate {
  Point2 x;
  double value;
  Eigen::Vector2d grad;
  Eigen::Vector2d direction;
  double lambda;
  double trial_value;
  bool steepest;
  bool accepted;
};

struct LocalResult {
  Point2 position;
  LocalStepTrace trace;
};

/// Thrown when a ball element is already degenerate at the starting position.
class DegenerateStart : public std::runtime_error {
 public:
  DegenerateStart(const std::string& what, NodeId node, TriangleId triangle)
      : std::runtime_error(what), node_(node), triangle_(triangle) {}
  NodeId node() const { return node_; }
  TriangleId triangle() const { return triangle_; }

 private:
  NodeId node_;
  TriangleId triangle_;
};

/// Newton direction when the Hessian is regular and the direction passes the
/// angle criterion, steepest descent otherwise.
Eigen::Vector2d descent_direction(const GradHess& gh, const NewtonConfig& cfg, bool* used_steepest = nullptr);

/// Sufficient-decrease test with factor 1/2. An infinite trial value fails.
bool armijo_accept(double w_old, double w_new, double lambda, double grad_dot_d);

/// Damped Newton iteration for the vertex of `ball`, starting from its current
/// mesh position. The mesh is not modified. With `history` set, every inner
/// iteration that computes a direction is appended.
LocalResult optimize_ball(const Mesh& mesh, const Ball& ball, const ObjectiveParams& params, const NewtonConfig& cfg,
                          std::vector<NewtonIterate>* history = nullptr);

}  // namespace osmot

#endif  // OSMOT_LOCAL_NEWTON_HPP
