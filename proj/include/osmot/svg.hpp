#ifndef OSMOT_SVG_HPP
#define OSMOT_SVG_HPP

#include "osmot/mesh.hpp"

#include <iosfwd>
#include <string>

namespace osmot {

enum class SvgColor { Q2, None };

/// Standalone SVG 1.1 document, one polygon per triangle. With SvgColor::Q2
/// the fill runs linearly from red (Q2 = 0) to green (Q2 = 1).
void render_svg(const Mesh& mesh, std::ostream& out, SvgColor color_by = SvgColor::Q2);
void render_svg(const Mesh& mesh, const std::string& path, SvgColor color_by = SvgColor::Q2);

}  // namespace osmot

#endif  // OSMOT_SVG_HPP
