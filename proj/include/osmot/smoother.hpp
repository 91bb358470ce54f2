#ifndef OSMOT_SMOOTHER_HPP
#define OSMOT_SMOOTHER_HPP

#include "osmot/local_newton.hpp"
#include "osmot/mesh.hpp"
#include "osmot/objective.hpp"
#include "osmot/quality.hpp"
#include "osmot/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace osmot {

enum class SmootherKind { Osmot, LaplacianBaseline, None };

struct SmootherConfig {
  int i_max = 10;
  QualityConfig quality;
  ObjectiveParams objective;
  NewtonConfig newton;
  bool reflag_each_loop = false;
  SmootherKind kind = SmootherKind::Osmot;
  /// Stop once a loop moves no node; later loops could not change anything.
  bool early_exit = true;

  void validate() const;
};

struct SkippedNode {
  NodeId node;
  int loop;
  std::string reason;
};

struct RunReport {
  std::vector<QualityReport> loops;  // loops[0] is the initial state
  int relocations = 0;
  int newton_steps = 0;
  std::vector<SkippedNode> skipped;
  /// Elements inverted right after each boundary pass (audit only).
  std::vector<int> inverted_after_boundary;
  bool stopped_early = false;
  double wall_seconds = 0.0;
};

using LoopObserver = std::function<void(const Mesh&, const QualityReport&)>;

/// Global smoothing loop: each repetition sweeps the movable boundary nodes
/// chain by chain, then the flagged internal nodes in ascending id order.
/// Connectivity is never modified. The observer sees the initial state and
/// the state after every loop.
RunReport smooth(Mesh& mesh, const SmootherConfig& cfg, const LoopObserver& observer = {});

/// Arithmetic mean of the distinct neighbours of an internal node.
Point2 laplacian_baseline_step(const Mesh& mesh, NodeId node);

}  // namespace osmot

#endif  // OSMOT_SMOOTHER_HPP
