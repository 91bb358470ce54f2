#ifndef OSMOT_REPORT_HPP
#define OSMOT_REPORT_HPP

#include "osmot/mesh.hpp"
#include "osmot/quality.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace osmot {

struct QualityReport {
  int loop = 0;
  double min_q2 = 0.0;
  double mean_q2 = 0.0;
  double min_q1 = 0.0;
  int flagged = 0;   // elements with Q2 < q_min
  int inverted = 0;  // elements with signed area <= 0
  std::array<int, 10> histogram{};  // Q2 in [k/10, (k+1)/10), last bucket closed
};

QualityReport quality_report(const Mesh& mesh, const QualityConfig& cfg, int loop);

/// Header plus one row per report: loop,minQ2,meanQ2,minQ1,flagged,inverted
void write_report_csv(std::ostream& os, const std::vector<QualityReport>& reports);

/// Human-readable summary used by the `check` command.
void print_quality_report(std::ostream& os, const QualityReport& report);

}  // namespace osmot

#endif  // OSMOT_REPORT_HPP
