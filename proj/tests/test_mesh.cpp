#include "osmot/fixtures.hpp"
#include "osmot/mesh.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace osmot;

namespace {

Node fixed(int id, double x, double y) { return {id, Point2(x, y), Mobility::fixed()}; }
Node internal(int id, double x, double y) { return {id, Point2(x, y), Mobility::internal()}; }
Node boundary(int id, double x, double y, int chain) { return {id, Point2(x, y), Mobility::boundary(chain)}; }

MeshErrorKind error_kind(const std::vector<Node>& nodes, const std::vector<Triangle>& tris) {
  try {
    build_topology(nodes, tris);
  } catch (const MeshError& e) {
    return e.kind();
  }
  FAIL("expected a MeshError");
  return MeshErrorKind::NotBoundary;
}

// Unit square split into 4 triangles around a centre node, edge midpoints
// absent; corners Fixed, bottom midpoint movable.
Mesh square_with_movable_bottom() {
  std::vector<Node> nodes{fixed(0, 0, 0), boundary(1, 0.5, 0, 3), fixed(2, 1, 0), fixed(3, 1, 1), fixed(4, 0, 1),
                          internal(5, 0.5, 0.5)};
  std::vector<Triangle> tris{{0, {0, 1, 5}}, {1, {1, 2, 5}}, {2, {2, 3, 5}}, {3, {3, 4, 5}}, {4, {4, 0, 5}}};
  return build_topology(nodes, tris);
}

}  // namespace

TEST_CASE("single fixed triangle has no balls and no chains") {
  const Mesh m = build_topology({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0, 1)}, {{0, {0, 1, 2}}});
  CHECK(m.internal_nodes().empty());
  CHECK(m.chains().empty());
  CHECK(m.ball(0) == nullptr);
}

TEST_CASE("Patch32 lattice: every interior node owns a six-element ball") {
  const Mesh m = generate_fixture(FixtureKind::Patch32, 1, 0.0);
  REQUIRE(m.num_triangles() == 32);
  REQUIRE(m.internal_nodes().size() == 9);
  for (NodeId v : m.internal_nodes()) CHECK(m.ball(v)->elements.size() == 6);
}

TEST_CASE("ball rotation puts the vertex first and preserves signed area") {
  for (auto kind : {FixtureKind::Patch32, FixtureKind::GradedInterface, FixtureKind::IndentedBox}) {
    const Mesh m = generate_fixture(kind, 3, 0.3);
    std::map<TriangleId, int> internal_vertices_per_triangle;
    for (NodeId v : m.internal_nodes()) {
      for (const auto& e : m.ball(v)->elements) {
        const auto rot = m.rotated_nodes(e);
        CHECK(rot[0] == v);
        const auto& orig = m.triangles()[e.triangle].nodes;
        const double rotated = signed_area(m.position(rot[0]), m.position(rot[1]), m.position(rot[2]));
        const double stored = signed_area(m.position(orig[0]), m.position(orig[1]), m.position(orig[2]));
        CHECK(std::abs(rotated - stored) <= 1e-14 * stored);
        ++internal_vertices_per_triangle[e.triangle];
      }
    }
    // Ball coverage: each triangle appears once per internal vertex it owns.
    for (const auto& tri : m.triangles()) {
      int expected = 0;
      for (NodeId v : tri.nodes) expected += m.mobility(v).kind == MobilityKind::Internal;
      CHECK(internal_vertices_per_triangle[tri.id] == expected);
    }
  }
}

TEST_CASE("validation errors") {
  // Two triangles sharing an edge whose endpoints are marked Internal but lie on the boundary.
  CHECK(error_kind({internal(0, 0, 0), fixed(1, 1, 0), internal(2, 1, 1), fixed(3, 0, 1)},
                   {{0, {0, 1, 2}}, {1, {0, 2, 3}}}) == MeshErrorKind::InconsistentMobility);
  CHECK(error_kind({fixed(0, 0, 0), fixed(1, 0, 1), fixed(2, 1, 0)}, {{0, {0, 1, 2}}}) == MeshErrorKind::InvertedElement);
  CHECK(error_kind({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0, 1), fixed(3, 5, 5)}, {{0, {0, 1, 2}}}) ==
        MeshErrorKind::OrphanNode);
  CHECK(error_kind({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0, 1)}, {{0, {0, 1, 7}}}) == MeshErrorKind::InvalidReference);
  // Three triangles on edge (0, 1).
  CHECK(error_kind({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0.5, 1), fixed(3, 0.5, 2), fixed(4, 0.5, 3)},
                   {{0, {0, 1, 2}}, {1, {0, 1, 3}}, {2, {0, 1, 4}}}) == MeshErrorKind::NonManifold);
  // A Boundary node that lies inside the mesh.
  CHECK(error_kind({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0, 1), boundary(3, 0.3, 0.3, 0)},
                   {{0, {0, 1, 3}}, {1, {1, 2, 3}}, {2, {2, 0, 3}}}) == MeshErrorKind::InconsistentMobility);
}

TEST_CASE("open chain between fixed corners") {
  const Mesh m = square_with_movable_bottom();
  REQUIRE(m.chains().size() == 1);
  const auto& c = m.chains()[0];
  CHECK(c.chain_id == 3);
  CHECK_FALSE(c.closed);
  CHECK(c.nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(boundary_neighbors(m, 1) == std::pair<NodeId, NodeId>{0, 2});
  try {
    boundary_neighbors(m, 0);
    FAIL("fixed node accepted");
  } catch (const MeshError& e) {
    CHECK(e.kind() == MeshErrorKind::NotBoundary);
  }
}

TEST_CASE("closed chain without fixed nodes is cyclic") {
  std::vector<Node> nodes{boundary(0, 0, 0, 0), boundary(1, 1, 0, 0), boundary(2, 1, 1, 0), boundary(3, 0, 1, 0),
                          internal(4, 0.5, 0.5)};
  std::vector<Triangle> tris{{0, {0, 1, 4}}, {1, {1, 2, 4}}, {2, {2, 3, 4}}, {3, {3, 0, 4}}};
  const Mesh m = build_topology(nodes, tris);
  REQUIRE(m.chains().size() == 1);
  CHECK(m.chains()[0].closed);
  CHECK(m.chains()[0].nodes.size() == 4);
  CHECK(boundary_neighbors(m, 0) == std::pair<NodeId, NodeId>{3, 1});
  CHECK(boundary_neighbors(m, 2) == std::pair<NodeId, NodeId>{1, 3});
}

TEST_CASE("chain ids must label exactly one sub-boundary") {
  std::vector<Node> nodes{fixed(0, 0, 0), boundary(1, 0.5, 0, 0), fixed(2, 1, 0), boundary(3, 1, 0.5, 1), fixed(4, 1, 1),
                          fixed(5, 0, 1), internal(6, 0.5, 0.5)};
  std::vector<Triangle> tris{{0, {0, 1, 6}}, {1, {1, 2, 6}}, {2, {2, 3, 6}}, {3, {3, 4, 6}}, {4, {4, 5, 6}}, {5, {5, 0, 6}}};
  CHECK_NOTHROW(build_topology(nodes, tris));
  nodes[3].mobility = Mobility::boundary(0);
  CHECK(error_kind(nodes, tris) == MeshErrorKind::InconsistentMobility);
}

TEST_CASE("IndentedBox chains: every boundary edge touching a movable node is in exactly one chain") {
  const Mesh m = generate_fixture(FixtureKind::IndentedBox, 1, 0.4);
  REQUIRE(m.chains().size() == 2);
  std::map<std::pair<NodeId, NodeId>, int> in_chain;
  for (const auto& c : m.chains())
    for (std::size_t k = 0; k + 1 < c.nodes.size(); ++k) ++in_chain[std::minmax(c.nodes[k], c.nodes[k + 1])];

  std::map<std::pair<NodeId, NodeId>, int> uses;
  for (const auto& t : m.triangles())
    for (int k = 0; k < 3; ++k) ++uses[std::minmax(t.nodes[k], t.nodes[(k + 1) % 3])];
  for (const auto& [edge, n] : uses) {
    if (n != 1) continue;
    const bool movable = m.mobility(edge.first).kind == MobilityKind::Boundary || m.mobility(edge.second).kind == MobilityKind::Boundary;
    CHECK(in_chain[edge] == (movable ? 1 : 0));
  }
  for (const auto& c : m.chains()) {
    CHECK(m.mobility(c.nodes.front()).kind == MobilityKind::Fixed);
    CHECK(m.mobility(c.nodes.back()).kind == MobilityKind::Fixed);
  }
}

TEST_CASE("flag_nodes") {
  QualityConfig cfg;
  cfg.q_min = 0.9;
  CHECK(flag_nodes(testing::hexagon_ball(), cfg).empty());

  // One sliver among good elements.
  cfg.q_min = 0.5;
  const Mesh sliver = build_topology({fixed(0, 0, 0), fixed(1, 1, 0), fixed(2, 0.5, 0.01), fixed(3, 0.5, -0.8)},
                                     {{0, {0, 1, 2}}, {1, {0, 3, 1}}});
  CHECK(flag_nodes(sliver, cfg) == std::set<NodeId>{0, 1, 2});

  // Distorted patch: the flagged set is exactly the nodes of elements under q_min.
  const Mesh patch = generate_fixture(FixtureKind::Patch32, 1, 0.45);
  cfg.q_min = 0.6;
  const auto flagged = flag_nodes(patch, cfg);
  std::set<NodeId> expected;
  for (const auto& t : patch.triangles())
    if (q2_shape(patch.geometry(t.id)) < 0.6) expected.insert(t.nodes.begin(), t.nodes.end());
  CHECK(flagged == expected);
  // Regression pin for the seed-1 fixture: all 9 interior nodes touch a bad element.
  int interior_flagged = 0;
  for (NodeId v : patch.internal_nodes()) interior_flagged += flagged.count(v);
  CHECK(interior_flagged == 9);
}

TEST_CASE("topology hash ignores coordinates") {
  Mesh m = generate_fixture(FixtureKind::Patch32, 1, 0.45);
  const auto h = m.topology_hash();
  m.set_position(6, Point2(0.3, 0.3));
  CHECK(m.topology_hash() == h);
  CHECK(generate_fixture(FixtureKind::IndentedBox, 1, 0.4).topology_hash() != h);
}

TEST_CASE("with_fixed_boundary freezes chains and keeps reference radii") {
  Mesh m = generate_fixture(FixtureKind::IndentedBox, 1, 0.4);
  m.set_element_rref(5, 0.25);
  const Mesh f = with_fixed_boundary(m);
  CHECK(f.chains().empty());
  CHECK(f.element_rref(5) == 0.25);
  CHECK(f.internal_nodes() == m.internal_nodes());
}
