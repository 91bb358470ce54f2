#include "osmot/mesh.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace osmot {

const char* to_string(MeshErrorKind kind) {
  switch (kind) {
    case MeshErrorKind::NonManifold: return "NonManifold";
    case MeshErrorKind::InvertedElement: return "InvertedElement";
    case MeshErrorKind::OrphanNode: return "OrphanNode";
    case MeshErrorKind::InconsistentMobility: return "InconsistentMobility";
    case MeshErrorKind::InvalidReference: return "InvalidReference";
    case MeshErrorKind::NotBoundary: return "NotBoundary";
  }
  return "Unknown";
}

const Ball* Mesh::ball(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= balls_.size()) return nullptr;
  const Ball& b = balls_[id];
  return b.vertex < 0 ? nullptr : &b;
}

std::array<NodeId, 3> Mesh::rotated_nodes(const BallElement& e) const {
  const auto& n = triangles_[e.triangle].nodes;
  return {n[e.rotation], n[(e.rotation + 1) % 3], n[(e.rotation + 2) % 3]};
}

std::array<Point2, 3> Mesh::corners(TriangleId t) const {
  const auto& n = triangles_[t].nodes;
  return {position(n[0]), position(n[1]), position(n[2])};
}

TriangleGeometry Mesh::geometry(TriangleId t) const {
  const auto p = corners(t);
  return triangle_geometry(p[0], p[1], p[2]);
}

std::optional<double> Mesh::element_rref(TriangleId t) const { return rref_[t]; }

double Mesh::rref_or(TriangleId t, double fallback) const { return rref_[t].value_or(fallback); }

void Mesh::set_element_rref(TriangleId t, double value) {
  if (!(value > 0.0)) throw std::invalid_argument("element reference radius must be positive");
  rref_.at(t) = value;
}

namespace {

// FNV-1a over raw integers.
struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void add(std::int64_t v) {
    unsigned char bytes[sizeof v];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char byte : bytes) {
      h ^= byte;
      h *= 1099511628211ull;
    }
  }
};

std::string msg(const std::string& head, int id) {
  std::ostringstream os;
  os << head << ' ' << id;
  return os.str();
}

using Edge = std::pair<NodeId, NodeId>;

Edge undirected(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

}  // namespace

std::uint64_t Mesh::topology_hash() const {
  Fnv f;
  f.add(static_cast<std::int64_t>(nodes_.size()));
  for (const auto& n : nodes_) {
    f.add(static_cast<int>(n.mobility.kind));
    f.add(n.mobility.chain_id);
  }
  for (const auto& t : triangles_)
    for (NodeId v : t.nodes) f.add(v);
  for (const auto& b : balls_) {
    f.add(b.vertex);
    for (const auto& e : b.elements) {
      f.add(e.triangle);
      f.add(e.rotation);
    }
  }
  for (const auto& c : chains_) {
    f.add(c.chain_id);
    f.add(c.closed);
    for (NodeId v : c.nodes) f.add(v);
  }
  return f.h;
}

Mesh build_topology(std::vector<Node> nodes, std::vector<Triangle> triangles) {
  const int n_nodes = static_cast<int>(nodes.size());
  const int n_tris = static_cast<int>(triangles.size());

  for (int i = 0; i < n_nodes; ++i) {
    if (nodes[i].id != i) throw MeshError(MeshErrorKind::InvalidReference, msg("node ids must be dense from 0; bad node", nodes[i].id), nodes[i].id);
    if (!nodes[i].position.allFinite()) throw MeshError(MeshErrorKind::InvalidReference, msg("non-finite coordinates at node", i), i);
  }
  for (int t = 0; t < n_tris; ++t) {
    const auto& tri = triangles[t];
    if (tri.id != t) throw MeshError(MeshErrorKind::InvalidReference, msg("triangle ids must be dense from 0; bad triangle", tri.id), tri.id);
    for (NodeId v : tri.nodes)
      if (v < 0 || v >= n_nodes) throw MeshError(MeshErrorKind::InvalidReference, msg("node reference out of range in triangle", t), t);
    if (tri.nodes[0] == tri.nodes[1] || tri.nodes[1] == tri.nodes[2] || tri.nodes[0] == tri.nodes[2])
      throw MeshError(MeshErrorKind::InvalidReference, msg("repeated node in triangle", t), t);
  }

  Mesh mesh;
  mesh.nodes_ = std::move(nodes);
  mesh.triangles_ = std::move(triangles);
  mesh.rref_.assign(n_tris, std::nullopt);

  for (int t = 0; t < n_tris; ++t) {
    const auto p = mesh.corners(t);
    if (!(signed_area(p[0], p[1], p[2]) > 0.0)) throw MeshError(MeshErrorKind::InvertedElement, msg("inverted or degenerate element: triangle", t), t);
  }

  // Edge incidence; directed copies keep the triangle's counter-clockwise sense.
  std::map<Edge, std::vector<Edge>> incidence;
  std::vector<int> valence(n_nodes, 0);
  for (const auto& tri : mesh.triangles_) {
    for (int k = 0; k < 3; ++k) {
      const NodeId u = tri.nodes[k];
      const NodeId v = tri.nodes[(k + 1) % 3];
      incidence[undirected(u, v)].push_back({u, v});
      ++valence[u];
    }
  }
  for (const auto& [edge, uses] : incidence) {
    if (uses.size() > 2) {
      std::ostringstream os;
      os << "edge (" << edge.first << ", " << edge.second << ") is shared by " << uses.size() << " triangles";
      throw MeshError(MeshErrorKind::NonManifold, os.str(), edge.first);
    }
    if (uses.size() == 2 && uses[0].first == uses[1].first)
      throw MeshError(MeshErrorKind::NonManifold, msg("inconsistently oriented neighbours along an edge at node", edge.first), edge.first);
  }
  for (int i = 0; i < n_nodes; ++i)
    if (valence[i] == 0) throw MeshError(MeshErrorKind::OrphanNode, msg("node belongs to no triangle:", i), i);

  std::vector<std::vector<NodeId>> out_edges(n_nodes);
  std::vector<int> in_count(n_nodes, 0);
  for (const auto& [edge, uses] : incidence) {
    if (uses.size() != 1) continue;
    out_edges[uses[0].first].push_back(uses[0].second);
    ++in_count[uses[0].second];
  }

  for (int i = 0; i < n_nodes; ++i) {
    const auto& mob = mesh.nodes_[i].mobility;
    const bool on_boundary = !out_edges[i].empty() || in_count[i] > 0;
    if (mob.kind == MobilityKind::Internal && on_boundary)
      throw MeshError(MeshErrorKind::InconsistentMobility, msg("internal node lies on the boundary:", i), i);
    if (mob.kind == MobilityKind::Boundary) {
      if (!on_boundary) throw MeshError(MeshErrorKind::InconsistentMobility, msg("boundary node is not on a boundary edge:", i), i);
      if (out_edges[i].size() != 1 || in_count[i] != 1)
        throw MeshError(MeshErrorKind::InconsistentMobility, msg("movable boundary node must have exactly two boundary edges:", i), i);
    }
  }

  // Balls.
  mesh.balls_.assign(n_nodes, Ball{});
  for (int t = 0; t < n_tris; ++t) {
    for (int k = 0; k < 3; ++k) {
      const NodeId v = mesh.triangles_[t].nodes[k];
      if (mesh.nodes_[v].mobility.kind != MobilityKind::Internal) continue;
      mesh.balls_[v].vertex = v;
      mesh.balls_[v].elements.push_back({t, k});
    }
  }
  for (int i = 0; i < n_nodes; ++i)
    if (mesh.balls_[i].vertex >= 0) mesh.internal_nodes_.push_back(i);

  // Chains: walk boundary edges from each Fixed node into movable runs, then
  // pick up the closed loops that contain no Fixed node.
  auto is_movable = [&](NodeId v) { return mesh.nodes_[v].mobility.kind == MobilityKind::Boundary; };
  std::vector<char> visited(n_nodes, 0);
  std::vector<BoundaryChain> chains;
  for (int start = 0; start < n_nodes; ++start) {
    if (is_movable(start)) continue;
    std::vector<NodeId> starts = out_edges[start];
    std::sort(starts.begin(), starts.end());
    for (NodeId next : starts) {
      if (!is_movable(next)) continue;
      BoundaryChain c;
      c.nodes.push_back(start);
      NodeId cur = next;
      while (is_movable(cur)) {
        visited[cur] = 1;
        c.nodes.push_back(cur);
        cur = out_edges[cur].front();
      }
      c.nodes.push_back(cur);
      chains.push_back(std::move(c));
    }
  }
  for (int start = 0; start < n_nodes; ++start) {
    if (!is_movable(start) || visited[start]) continue;
    BoundaryChain c;
    c.closed = true;
    NodeId cur = start;
    while (!visited[cur]) {
      visited[cur] = 1;
      c.nodes.push_back(cur);
      cur = out_edges[cur].front();
    }
    chains.push_back(std::move(c));
  }

  std::set<int> seen_labels;
  for (auto& c : chains) {
    int label = -1;
    for (NodeId v : c.nodes) {
      if (!is_movable(v)) continue;
      const int id = mesh.nodes_[v].mobility.chain_id;
      if (label < 0) label = id;
      if (id != label) throw MeshError(MeshErrorKind::InconsistentMobility, msg("sub-boundary mixes chain ids at node", v), v);
    }
    if (!seen_labels.insert(label).second)
      throw MeshError(MeshErrorKind::InconsistentMobility, msg("chain id used by two separate sub-boundaries:", label), label);
    c.chain_id = label;
  }
  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) { return a.chain_id < b.chain_id; });

  mesh.chain_neighbors_.assign(n_nodes, {-1, -1});
  for (const auto& c : chains) {
    const int len = static_cast<int>(c.nodes.size());
    for (int k = 0; k < len; ++k) {
      const NodeId v = c.nodes[k];
      if (!is_movable(v)) continue;
      const NodeId prev = c.nodes[(k - 1 + len) % len];
      const NodeId next = c.nodes[(k + 1) % len];
      mesh.chain_neighbors_[v] = {prev, next};
    }
  }
  mesh.chains_ = std::move(chains);
  return mesh;
}

std::set<NodeId> flag_nodes(const Mesh& mesh, const QualityConfig& cfg) {
  std::set<NodeId> flagged;
  for (const auto& tri : mesh.triangles()) {
    if (element_passes(mesh.geometry(tri.id), cfg)) continue;
    flagged.insert(tri.nodes.begin(), tri.nodes.end());
  }
  return flagged;
}

std::pair<NodeId, NodeId> boundary_neighbors(const Mesh& mesh, NodeId node) {
  if (node < 0 || static_cast<std::size_t>(node) >= mesh.num_nodes() || mesh.mobility(node).kind != MobilityKind::Boundary)
    throw MeshError(MeshErrorKind::NotBoundary, msg("not a movable boundary node:", node), node);
  return mesh.chain_neighbors_[node];
}

Mesh with_fixed_boundary(const Mesh& mesh) {
  std::vector<Node> nodes = mesh.nodes();
  for (auto& n : nodes)
    if (n.mobility.kind == MobilityKind::Boundary) n.mobility = Mobility::fixed();
  Mesh out = build_topology(std::move(nodes), mesh.triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    if (auto r = mesh.element_rref(static_cast<TriangleId>(t))) out.set_element_rref(static_cast<TriangleId>(t), *r);
  return out;
}

}  // namespace osmot
