#include "osmot/smoother.hpp"

#include "osmot/boundary.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace osmot {

void SmootherConfig::validate() const {
  if (i_max < 0) throw std::invalid_argument("i_max must be non-negative");
  quality.validate();
  objective.validate();
  newton.validate();
}

Point2 laplacian_baseline_step(const Mesh& mesh, NodeId node) {
  const Ball* ball = mesh.ball(node);
  if (!ball) throw MeshError(MeshErrorKind::InconsistentMobility, "Laplacian step requested for a node without a ball", node);
  std::set<NodeId> neighbours;
  for (const auto& e : ball->elements) {
    const auto n = mesh.rotated_nodes(e);
    neighbours.insert(n[1]);
    neighbours.insert(n[2]);
  }
  Point2 sum = Point2::Zero();
  for (NodeId v : neighbours) sum += mesh.position(v);
  return sum / static_cast<double>(neighbours.size());
}

namespace {

int count_inverted(const Mesh& mesh) {
  int n = 0;
  for (const auto& tri : mesh.triangles()) {
    const auto p = mesh.corners(tri.id);
    if (!(signed_area(p[0], p[1], p[2]) > 0.0)) ++n;
  }
  return n;
}

std::vector<NodeId> movable_internal(const Mesh& mesh, const QualityConfig& q) {
  const auto flagged = flag_nodes(mesh, q);
  std::vector<NodeId> out;
  for (NodeId v : mesh.internal_nodes())
    if (flagged.count(v)) out.push_back(v);
  return out;
}

}  // namespace

RunReport smooth(Mesh& mesh, const SmootherConfig& cfg, const LoopObserver& observer) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RunReport report;
  report.loops.push_back(quality_report(mesh, cfg.quality, 0));
  if (observer) observer(mesh, report.loops.back());

  std::vector<NodeId> targets = movable_internal(mesh, cfg.quality);

  for (int loop = 1; loop <= cfg.i_max && cfg.kind != SmootherKind::None; ++loop) {
    if (cfg.reflag_each_loop && loop > 1) targets = movable_internal(mesh, cfg.quality);
    int moved = 0;

    for (const auto& chain : mesh.chains()) {
      for (NodeId v : chain.nodes) {
        if (mesh.mobility(v).kind != MobilityKind::Boundary) continue;
        const auto [prev, next] = boundary_neighbors(mesh, v);
        try {
          const Point2 p = smooth_boundary_node(BoundaryTriple{mesh.position(prev), mesh.position(v), mesh.position(next)});
          if (p != mesh.position(v)) {
            mesh.set_position(v, p);
            ++moved;
          }
        } catch (const CoincidentNeighbors& err) {
          report.skipped.push_back({v, loop, err.what()});
        }
      }
    }
    report.inverted_after_boundary.push_back(count_inverted(mesh));

    for (NodeId v : targets) {
      const Ball& ball = *mesh.ball(v);
      Point2 p;
      if (cfg.kind == SmootherKind::Osmot) {
        try {
          const LocalResult r = optimize_ball(mesh, ball, cfg.objective, cfg.newton);
          report.newton_steps += r.trace.accepted_steps;
          p = r.position;
        } catch (const DegenerateStart& err) {
          report.skipped.push_back({v, loop, err.what()});
          continue;
        }
      } else {
        p = laplacian_baseline_step(mesh, v);
      }
      if (p != mesh.position(v)) {
        mesh.set_position(v, p);
        ++moved;
      }
    }

    report.relocations += moved;
    report.loops.push_back(quality_report(mesh, cfg.quality, loop));
    if (observer) observer(mesh, report.loops.back());
    if (cfg.early_exit && moved == 0) {
      report.stopped_early = loop < cfg.i_max;
      break;
    }
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace osmot
