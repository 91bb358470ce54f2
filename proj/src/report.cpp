#include "osmot/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace osmot {

QualityReport quality_report(const Mesh& mesh, const QualityConfig& cfg, int loop) {
  QualityReport rep;
  rep.loop = loop;
  if (mesh.num_triangles() == 0) return rep;

  double sum = 0.0;
  rep.min_q2 = std::numeric_limits<double>::infinity();
  rep.min_q1 = std::numeric_limits<double>::infinity();
  for (const auto& tri : mesh.triangles()) {
    const auto g = mesh.geometry(tri.id);
    // An inverted element scores zero on both measures.
    const bool inverted = !(g.area_signed > 0.0);
    const double q2 = inverted ? 0.0 : q2_shape(g);
    const double q1 = inverted ? 0.0 : q1_size(g, mesh.rref_or(tri.id, cfg.r_ref_default));
    rep.min_q2 = std::min(rep.min_q2, q2);
    rep.min_q1 = std::min(rep.min_q1, q1);
    sum += q2;
    if (q2 < cfg.q_min) ++rep.flagged;
    if (inverted) ++rep.inverted;
    ++rep.histogram[std::clamp(static_cast<int>(q2 * 10.0), 0, 9)];
  }
  rep.mean_q2 = sum / static_cast<double>(mesh.num_triangles());
  return rep;
}

void write_report_csv(std::ostream& os, const std::vector<QualityReport>& reports) {
  os << "loop,minQ2,meanQ2,minQ1,flagged,inverted\n";
  char buf[160];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%d,%d\n", r.loop, r.min_q2, r.mean_q2, r.min_q1, r.flagged,
                  r.inverted);
    os << buf;
  }
}

void print_quality_report(std::ostream& os, const QualityReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "min Q2   %.6f\nmean Q2  %.6f\nmin Q1   %.6f\n", r.min_q2, r.mean_q2, r.min_q1);
  os << buf;
  os << "flagged  " << r.flagged << "\ninverted " << r.inverted << "\nQ2 histogram\n";
  for (int k = 0; k < 10; ++k) {
    std::snprintf(buf, sizeof buf, "  [%.1f, %.1f%c %d\n", k / 10.0, (k + 1) / 10.0, k == 9 ? ']' : ')', r.histogram[k]);
    os << buf;
  }
}

}  // namespace osmot
