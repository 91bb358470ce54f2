#include "osmot/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace osmot {

std::optional<FixtureKind> parse_fixture_kind(const std::string& name) {
  if (name == "patch32") return FixtureKind::Patch32;
  if (name == "graded" || name == "graded-interface") return FixtureKind::GradedInterface;
  if (name == "horseshoe") return FixtureKind::Horseshoe;
  if (name == "indented" || name == "indented-box") return FixtureKind::IndentedBox;
  return std::nullopt;
}

const char* fixture_name(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Patch32: return "patch32";
    case FixtureKind::GradedInterface: return "graded";
    case FixtureKind::Horseshoe: return "horseshoe";
    case FixtureKind::IndentedBox: return "indented";
  }
  return "?";
}

namespace {

class Builder {
 public:
  NodeId node(double x, double y, Mobility m) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({id, Point2(x, y), m});
    return id;
  }

  void triangle(NodeId a, NodeId b, NodeId c) {
    const TriangleId id = static_cast<TriangleId>(tris_.size());
    if (!(signed_area(nodes_[a].position, nodes_[b].position, nodes_[c].position) > 0.0))
      throw std::logic_error("fixture generator produced a clockwise triangle");
    tris_.push_back({id, {a, b, c}});
  }

  std::vector<Node>& nodes() { return nodes_; }
  std::vector<Triangle>& triangles() { return tris_; }

  Mesh build() { return build_topology(nodes_, tris_); }

 private:
  std::vector<Node> nodes_;
  std::vector<Triangle> tris_;
};

// Uniform double in [0, 1) from the raw 64-bit stream; std distributions are
// implementation-defined and would break cross-platform reproducibility.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Rising-diagonal split of an nx-by-ny block of cells. ids[j][i] holds node ids.
void split_cells(Builder& b, const std::vector<std::vector<NodeId>>& ids) {
  for (std::size_t j = 0; j + 1 < ids.size(); ++j) {
    for (std::size_t i = 0; i + 1 < ids[j].size(); ++i) {
      const NodeId n00 = ids[j][i], n10 = ids[j][i + 1], n01 = ids[j + 1][i], n11 = ids[j + 1][i + 1];
      b.triangle(n00, n10, n11);
      b.triangle(n00, n11, n01);
    }
  }
}

// Triangulates the strip between two columns of nodes ordered bottom-to-top,
// `left` lying to the left of `right`.
void zip_columns(Builder& b, const std::vector<NodeId>& left, const std::vector<NodeId>& right) {
  std::size_t i = 0, j = 0;
  auto y = [&](NodeId v) { return b.nodes()[v].position.y(); };
  while (i + 1 < left.size() || j + 1 < right.size()) {
    const bool advance_left = j + 1 == right.size() || (i + 1 < left.size() && y(left[i + 1]) <= y(right[j + 1]));
    if (advance_left) {
      b.triangle(left[i], right[j], left[i + 1]);
      ++i;
    } else {
      b.triangle(left[i], right[j], right[j + 1]);
      ++j;
    }
  }
}

Mesh patch32(std::uint64_t seed, double distortion) {
  constexpr int n = 4;
  const double h = kPatchPitch;
  Builder b;
  std::vector<std::vector<NodeId>> ids(n + 1, std::vector<NodeId>(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const bool boundary = i == 0 || j == 0 || i == n || j == n;
      ids[j][i] = b.node(i * h, j * h, boundary ? Mobility::fixed() : Mobility::internal());
    }
  split_cells(b, ids);
  if (distortion == 0.0) return b.build();

  Mesh lattice = b.build();
  std::mt19937_64 rng(seed);
  auto& nodes = b.nodes();
  for (NodeId v : lattice.internal_nodes()) {
    const Point2 home = nodes[v].position;
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      const Point2 candidate = home + distortion * h * Point2(std::cos(angle), std::sin(angle));
      bool valid = true;
      for (const auto& e : lattice.ball(v)->elements) {
        const auto tri = lattice.rotated_nodes(e);
        if (signed_area(candidate, nodes[tri[1]].position, nodes[tri[2]].position) <= 0.05 * h * h) valid = false;
      }
      if (valid) {
        nodes[v].position = candidate;
        break;
      }
    }
  }
  return b.build();
}

Mesh graded_interface(std::uint64_t seed, double distortion) {
  Builder b;
  auto mob = [](double x, double y) {
    const bool boundary = x == 0.0 || x == 2.25 || y == 0.0 || y == 1.0;
    return boundary ? Mobility::fixed() : Mobility::internal();
  };

  std::vector<std::vector<NodeId>> fine(9, std::vector<NodeId>(7));
  for (int j = 0; j <= 8; ++j)
    for (int i = 0; i <= 6; ++i) fine[j][i] = b.node(i / 8.0, j / 8.0, mob(i / 8.0, j / 8.0));

  std::mt19937_64 rng(seed);
  const double mid_y[] = {0.0, 0.18, 0.37, 0.58, 0.79, 1.0};
  const double mid_x[] = {1.0, 1.02, 0.97, 1.03, 0.98, 1.0};
  std::vector<NodeId> middle;
  for (int k = 0; k < 6; ++k) {
    double x = mid_x[k], y = mid_y[k];
    if (k > 0 && k < 5) {
      x += distortion * 0.05 * (2.0 * unit(rng) - 1.0);
      y += distortion * 0.05 * (2.0 * unit(rng) - 1.0);
    }
    middle.push_back(b.node(x, y, mob(x, y)));
  }

  std::vector<std::vector<NodeId>> coarse(5, std::vector<NodeId>(5));
  for (int j = 0; j <= 4; ++j)
    for (int i = 0; i <= 4; ++i) coarse[j][i] = b.node(1.25 + i / 4.0, j / 4.0, mob(1.25 + i / 4.0, j / 4.0));

  split_cells(b, fine);
  std::vector<NodeId> fine_edge, coarse_edge;
  for (int j = 0; j <= 8; ++j) fine_edge.push_back(fine[j][6]);
  for (int j = 0; j <= 4; ++j) coarse_edge.push_back(coarse[j][0]);
  zip_columns(b, fine_edge, middle);
  zip_columns(b, middle, coarse_edge);
  split_cells(b, coarse);
  return b.build();
}

Mesh horseshoe() {
  Builder b;
  b.node(0.0, 0.0, Mobility::internal());
  const double ring[][2] = {{-1.0, -0.5}, {1.0, -0.5}, {1.2, 2.0}, {0.3, 2.0}, {0.0, 0.3}, {-0.3, 2.0}, {-1.2, 2.0}};
  for (const auto& p : ring) b.node(p[0], p[1], Mobility::fixed());
  for (int k = 1; k <= 7; ++k) b.triangle(0, k, k % 7 + 1);
  return b.build();
}

constexpr int kBoxCellsX = 12;
constexpr int kBoxCellsY = 6;
constexpr double kBoxPitch = 0.5;
constexpr double kBoxHeight = kBoxCellsY * kBoxPitch;
constexpr double kNotchLo = 2.5;
constexpr double kNotchHi = 3.5;

// Fraction of the notch depth applied at abscissa x.
double notch_profile(double x) {
  if (x >= kNotchLo && x <= kNotchHi) return 1.0;
  if (x > kNotchLo - kBoxPitch && x < kNotchLo) return (x - (kNotchLo - kBoxPitch)) / kBoxPitch;
  if (x > kNotchHi && x < kNotchHi + kBoxPitch) return (kNotchHi + kBoxPitch - x) / kBoxPitch;
  return 0.0;
}

Mesh indented_box(double distortion) {
  const double depth = distortion * kBoxHeight;
  Builder b;
  std::vector<std::vector<NodeId>> ids(kBoxCellsY + 1, std::vector<NodeId>(kBoxCellsX + 1));
  for (int j = 0; j <= kBoxCellsY; ++j) {
    for (int i = 0; i <= kBoxCellsX; ++i) {
      const double x = i * kBoxPitch;
      const double y = j * kBoxPitch * (1.0 - depth / kBoxHeight * notch_profile(x));
      Mobility m = Mobility::internal();
      if (i == 0 || i == kBoxCellsX || j == 0) m = Mobility::fixed();
      if (j == kBoxCellsY && m.kind == MobilityKind::Internal) {
        if (x < kNotchLo) m = Mobility::boundary(0);
        else if (x > kNotchHi) m = Mobility::boundary(1);
        else m = Mobility::fixed();
      }
      ids[j][i] = b.node(x, y, m);
    }
  }
  split_cells(b, ids);
  return b.build();
}

}  // namespace

Mesh generate_fixture(FixtureKind kind, std::uint64_t seed, double distortion) {
  if (!(distortion >= 0.0 && distortion < 1.0)) throw std::invalid_argument("distortion must lie in [0, 1)");
  switch (kind) {
    case FixtureKind::Patch32: return patch32(seed, distortion);
    case FixtureKind::GradedInterface: return graded_interface(seed, distortion);
    case FixtureKind::Horseshoe: return horseshoe();
    case FixtureKind::IndentedBox: return indented_box(distortion);
  }
  throw std::invalid_argument("unknown fixture kind");
}

void press_notch(Mesh& mesh, double amount) {
  for (const auto& n : mesh.nodes()) {
    if (n.mobility.kind != MobilityKind::Fixed) continue;
    const double x = n.position.x();
    if (x < kNotchLo - 1e-9 || x > kNotchHi + 1e-9 || n.position.y() <= 1e-9) continue;
    mesh.set_position(n.id, n.position - Point2(0.0, amount));
  }
}

}  // namespace osmot
