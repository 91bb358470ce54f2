#ifndef OSMOT_MESH_HPP
#define OSMOT_MESH_HPP

#include "osmot/geometry.hpp"
#include "osmot/quality.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace osmot {

using NodeId = int;
using TriangleId = int;

enum class MobilityKind { Fixed, Internal, Boundary };

struct Mobility {
  MobilityKind kind = MobilityKind::Fixed;
  int chain_id = -1;  // only meaningful for Boundary

  static Mobility fixed() { return {MobilityKind::Fixed, -1}; }
  static Mobility internal() { return {MobilityKind::Internal, -1}; }
  static Mobility boundary(int chain) { return {MobilityKind::Boundary, chain}; }

  bool operator==(const Mobility&) const = default;
};

struct Node {
  NodeId id = 0;
  Point2 position = Point2::Zero();
  Mobility mobility;
};

struct Triangle {
  TriangleId id = 0;
  std::array<NodeId, 3> nodes{};
};

/// A triangle of a ball, rotated so that the ball vertex sits in local slot 0.
struct BallElement {
  TriangleId triangle = 0;
  int rotation = 0;  // local slot of the vertex in the stored triple
};

struct Ball {
  NodeId vertex = -1;
  std::vector<BallElement> elements;
};

/// Run of boundary nodes. Open chains start and end at Fixed nodes; closed
/// chains list only movable nodes and wrap around.
struct BoundaryChain {
  int chain_id = 0;
  bool closed = false;
  std::vector<NodeId> nodes;
};

enum class MeshErrorKind { NonManifold, InvertedElement, OrphanNode, InconsistentMobility, InvalidReference, NotBoundary };

class MeshError : public std::runtime_error {
 public:
  MeshError(MeshErrorKind kind, const std::string& what, int entity = -1)
      : std::runtime_error(what), kind_(kind), entity_(entity) {}

  MeshErrorKind kind() const { return kind_; }
  /// Offending node or triangle id, -1 when not applicable.
  int entity() const { return entity_; }

 private:
  MeshErrorKind kind_;
  int entity_;
};

const char* to_string(MeshErrorKind kind);

class Mesh {
 public:
  Mesh() = default;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<BoundaryChain>& chains() const { return chains_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }

  const Point2& position(NodeId id) const { return nodes_[id].position; }
  void set_position(NodeId id, const Point2& p) { nodes_[id].position = p; }
  const Mobility& mobility(NodeId id) const { return nodes_[id].mobility; }

  /// Ball of an Internal node, nullptr for any other node.
  const Ball* ball(NodeId id) const;
  /// Internal node ids that own a ball, ascending.
  const std::vector<NodeId>& internal_nodes() const { return internal_nodes_; }

  /// Node triple of a ball element with the ball vertex first.
  std::array<NodeId, 3> rotated_nodes(const BallElement& e) const;

  std::array<Point2, 3> corners(TriangleId t) const;
  TriangleGeometry geometry(TriangleId t) const;

  /// Per-element reference radius, if one was assigned.
  std::optional<double> element_rref(TriangleId t) const;
  double rref_or(TriangleId t, double fallback) const;
  void set_element_rref(TriangleId t, double value);
  const std::vector<std::optional<double>>& element_rrefs() const { return rref_; }

  /// Hash of everything except node coordinates.
  std::uint64_t topology_hash() const;

 private:
  friend Mesh build_topology(std::vector<Node> nodes, std::vector<Triangle> triangles);
  friend std::pair<NodeId, NodeId> boundary_neighbors(const Mesh& mesh, NodeId node);

  std::vector<Node> nodes_;
  std::vector<Triangle> triangles_;
  std::vector<std::optional<double>> rref_;
  std::vector<Ball> balls_;  // indexed by node id; vertex == -1 when absent
  std::vector<NodeId> internal_nodes_;
  std::vector<BoundaryChain> chains_;
  std::vector<std::pair<NodeId, NodeId>> chain_neighbors_;  // (-1, -1) for non-chain nodes
};

/// Validates connectivity and derives balls and boundary chains.
/// Throws MeshError on invalid input.
Mesh build_topology(std::vector<Node> nodes, std::vector<Triangle> triangles);

/// Nodes of every element with Q2 below q_min.
std::set<NodeId> flag_nodes(const Mesh& mesh, const QualityConfig& cfg);

/// Chain neighbors (P1, P2) of a movable boundary node.
std::pair<NodeId, NodeId> boundary_neighbors(const Mesh& mesh, NodeId node);

/// Rebuilds the mesh with every Boundary node turned Fixed.
Mesh with_fixed_boundary(const Mesh& mesh);

}  // namespace osmot

#endif  // OSMOT_MESH_HPP
