#include "osmot/mesh_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace osmot {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(Line& line) {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      const auto first = text.find_first_not_of(" \t\r");
      if (first == std::string::npos || text[first] == '#') continue;
      std::istringstream ss(text);
      line.number = number_;
      line.tokens.clear();
      for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
      return true;
    }
    return false;
  }

  Line expect(const char* what) {
    Line line;
    if (!next(line)) throw ParseError(std::string("unexpected end of file, expected ") + what, number_ + 1);
    return line;
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

long parse_int(const std::string& tok, int line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("expected an integer, got '" + tok + "'", line);
  return v;
}

double parse_real(const std::string& tok, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError("expected a finite number, got '" + tok + "'", line);
  return v;
}

Mobility parse_mobility(const std::string& tok, int line) {
  if (tok == "F") return Mobility::fixed();
  if (tok == "I") return Mobility::internal();
  if (tok.size() > 1 && tok[0] == 'B') {
    const long chain = parse_int(tok.substr(1), line);
    if (chain < 0) throw ParseError("chain id must be non-negative", line);
    return Mobility::boundary(static_cast<int>(chain));
  }
  throw ParseError("unknown mobility '" + tok + "' (expected F, I or B<chain>)", line);
}

std::size_t section_count(const Line& line, const char* keyword) {
  if (line.tokens.size() != 2 || line.tokens[0] != keyword)
    throw ParseError(std::string("expected '") + keyword + " <count>'", line.number);
  const long n = parse_int(line.tokens[1], line.number);
  if (n < 0) throw ParseError("negative count", line.number);
  return static_cast<std::size_t>(n);
}

void require_fields(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError("expected " + std::to_string(n) + " fields, got " + std::to_string(line.tokens.size()), line.number);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  LineReader reader(in);

  Line header = reader.expect("header");
  if (header.tokens.size() != 2 || header.tokens[0] != "osmot-mesh" || header.tokens[1] != "v1")
    throw ParseError("missing 'osmot-mesh v1' header", header.number);

  const std::size_t n_nodes = section_count(reader.expect("nodes section"), "nodes");
  std::vector<Node> nodes;
  std::vector<int> node_line;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    Line l = reader.expect("node line");
    require_fields(l, 4);
    Node n;
    n.id = static_cast<int>(parse_int(l.tokens[0], l.number));
    if (n.id != static_cast<int>(i)) throw ParseError("node ids must be dense and ascending from 0", l.number);
    n.position = Point2(parse_real(l.tokens[1], l.number), parse_real(l.tokens[2], l.number));
    n.mobility = parse_mobility(l.tokens[3], l.number);
    nodes.push_back(n);
    node_line.push_back(l.number);
  }

  const std::size_t n_tris = section_count(reader.expect("triangles section"), "triangles");
  std::vector<Triangle> tris;
  std::vector<int> tri_line;
  for (std::size_t t = 0; t < n_tris; ++t) {
    Line l = reader.expect("triangle line");
    require_fields(l, 4);
    Triangle tri;
    tri.id = static_cast<int>(parse_int(l.tokens[0], l.number));
    if (tri.id != static_cast<int>(t)) throw ParseError("triangle ids must be dense and ascending from 0", l.number);
    for (int k = 0; k < 3; ++k) {
      const long v = parse_int(l.tokens[k + 1], l.number);
      if (v < 0 || static_cast<std::size_t>(v) >= n_nodes)
        throw ValidationError("triangle " + std::to_string(t) + " references node " + std::to_string(v) + " but only " +
                                  std::to_string(n_nodes) + " nodes exist",
                              l.number, MeshErrorKind::InvalidReference);
      tri.nodes[k] = static_cast<NodeId>(v);
    }
    tris.push_back(tri);
    tri_line.push_back(l.number);
  }

  std::vector<std::pair<TriangleId, double>> rrefs;
  std::vector<int> rref_line;
  Line l;
  if (reader.next(l)) {
    const std::size_t n_rref = section_count(l, "rref");
    for (std::size_t k = 0; k < n_rref; ++k) {
      Line r = reader.expect("rref line");
      require_fields(r, 2);
      const long t = parse_int(r.tokens[0], r.number);
      if (t < 0 || static_cast<std::size_t>(t) >= n_tris)
        throw ValidationError("rref entry for unknown triangle " + std::to_string(t), r.number, MeshErrorKind::InvalidReference);
      const double v = parse_real(r.tokens[1], r.number);
      if (!(v > 0.0)) throw ParseError("reference radius must be positive", r.number);
      rrefs.emplace_back(static_cast<TriangleId>(t), v);
    }
    if (reader.next(l)) throw ParseError("unexpected content after the last section", l.number);
  }

  Mesh mesh;
  try {
    mesh = build_topology(std::move(nodes), std::move(tris));
  } catch (const MeshError& err) {
    int line = 0;
    const int id = err.entity();
    const bool triangle_error = err.kind() == MeshErrorKind::InvertedElement || err.kind() == MeshErrorKind::InvalidReference;
    if (id >= 0) {
      if (triangle_error && static_cast<std::size_t>(id) < tri_line.size()) line = tri_line[id];
      if (!triangle_error && static_cast<std::size_t>(id) < node_line.size()) line = node_line[id];
    }
    throw ValidationError(std::string(to_string(err.kind())) + ": " + err.what(), line, err.kind());
  }
  for (const auto& [t, v] : rrefs) mesh.set_element_rref(t, v);
  return mesh;
}

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshIoError("cannot open '" + path + "' for reading", 0);
  return read_mesh(in);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  char buf[128];
  out << "osmot-mesh v1\n";
  out << "nodes " << mesh.num_nodes() << '\n';
  for (const auto& n : mesh.nodes()) {
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g ", n.id, n.position.x(), n.position.y());
    out << buf;
    switch (n.mobility.kind) {
      case MobilityKind::Fixed: out << "F"; break;
      case MobilityKind::Internal: out << "I"; break;
      case MobilityKind::Boundary: out << 'B' << n.mobility.chain_id; break;
    }
    out << '\n';
  }
  out << "triangles " << mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles())
    out << t.id << ' ' << t.nodes[0] << ' ' << t.nodes[1] << ' ' << t.nodes[2] << '\n';

  std::size_t n_rref = 0;
  for (const auto& r : mesh.element_rrefs()) n_rref += r.has_value();
  if (n_rref > 0) {
    out << "rref " << n_rref << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      if (const auto& r = mesh.element_rrefs()[t]) {
        std::snprintf(buf, sizeof buf, "%zu %.17g\n", t, *r);
        out << buf;
      }
    }
  }
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshIoError("cannot open '" + path + "' for writing", 0);
  write_mesh(mesh, out);
  if (!out) throw MeshIoError("write to '" + path + "' failed", 0);
}

}  // namespace osmot
