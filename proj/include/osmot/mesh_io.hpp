#ifndef OSMOT_MESH_IO_HPP
#define OSMOT_MESH_IO_HPP

#include "osmot/mesh.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace osmot {

class MeshIoError : public std::runtime_error {
 public:
  MeshIoError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  /// 1-based line in the input, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

class ParseError : public MeshIoError {
 public:
  using MeshIoError::MeshIoError;
};

class ValidationError : public MeshIoError {
 public:
  ValidationError(const std::string& what, int line, MeshErrorKind kind) : MeshIoError(what, line), kind_(kind) {}
  MeshErrorKind kind() const { return kind_; }

 private:
  MeshErrorKind kind_;
};

/// Reads the `osmot-mesh v1` text format:
///
///   osmot-mesh v1
///   nodes <N>
///   <id> <x> <y> <F|I|B<chain>>      (N lines)
///   triangles <M>
///   <id> <n0> <n1> <n2>              (M lines)
///   rref <K>                         (optional)
///   <triangle id> <value>            (K lines)
///
/// Blank lines and lines starting with '#' are ignored.
Mesh read_mesh(std::istream& in);
Mesh read_mesh(const std::string& path);

/// Coordinates are written with 17 significant digits so a read restores them exactly.
void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh(const Mesh& mesh, const std::string& path);

}  // namespace osmot

#endif  // OSMOT_MESH_IO_HPP
