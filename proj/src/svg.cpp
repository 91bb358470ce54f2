#include "osmot/svg.hpp"

#include "osmot/mesh_io.hpp"
#include "osmot/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

namespace osmot {

void render_svg(const Mesh& mesh, std::ostream& out, SvgColor color_by) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto& n : mesh.nodes()) {
    xmin = std::min(xmin, n.position.x());
    xmax = std::max(xmax, n.position.x());
    ymin = std::min(ymin, n.position.y());
    ymax = std::max(ymax, n.position.y());
  }
  if (mesh.num_nodes() == 0) xmin = ymin = xmax = ymax = 0.0;
  double extent = std::max(xmax - xmin, ymax - ymin);
  if (!(extent > 0.0)) extent = 1.0;
  const double margin = 0.05 * extent;
  const double stroke = 0.002 * extent;

  // SVG's y axis points down; mesh y is negated so the picture is upright.
  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"%d\" viewBox=\"%.9g %.9g %.9g %.9g\">\n",
                static_cast<int>(std::lround(800.0 * (ymax - ymin + 2 * margin) / (xmax - xmin + 2 * margin))),
                xmin - margin, -ymax - margin, xmax - xmin + 2 * margin, ymax - ymin + 2 * margin);
  out << buf;
  std::snprintf(buf, sizeof buf, "<g stroke=\"black\" stroke-width=\"%.9g\" stroke-linejoin=\"round\">\n", stroke);
  out << buf;
  for (const auto& tri : mesh.triangles()) {
    const auto p = mesh.corners(tri.id);
    int red = 255, green = 255, blue = 255;
    if (color_by == SvgColor::Q2) {
      const double q = std::clamp(q2_shape(mesh.geometry(tri.id)), 0.0, 1.0);
      red = static_cast<int>(std::lround(255.0 * (1.0 - q)));
      green = static_cast<int>(std::lround(255.0 * q));
      blue = 0;
    }
    std::snprintf(buf, sizeof buf, "<polygon points=\"%.9g,%.9g %.9g,%.9g %.9g,%.9g\" fill=\"rgb(%d,%d,%d)\"/>\n", p[0].x(),
                  0.0 - p[0].y(), p[1].x(), 0.0 - p[1].y(), p[2].x(), 0.0 - p[2].y(), red, green, blue);
    out << buf;
  }
  out << "</g>\n</svg>\n";
}

void render_svg(const Mesh& mesh, const std::string& path, SvgColor color_by) {
  std::ofstream out(path);
  if (!out) throw MeshIoError("cannot open '" + path + "' for writing", 0);
  render_svg(mesh, out, color_by);
  if (!out) throw MeshIoError("write to '" + path + "' failed", 0);
}

}  // namespace osmot
