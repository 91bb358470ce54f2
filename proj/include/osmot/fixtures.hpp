#ifndef OSMOT_FIXTURES_HPP
#define OSMOT_FIXTURES_HPP

#include "osmot/mesh.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace osmot {

enum class FixtureKind {
  Patch32,          // 4x4 square lattice, rising diagonals, interior nodes displaced
  GradedInterface,  // fine and coarse structured zones joined by an irregular strip
  Horseshoe,        // single ball whose neighbour centroid lies outside its kernel
  IndentedBox       // structured box with a pressed-in notch in the top boundary
};

std::optional<FixtureKind> parse_fixture_kind(const std::string& name);
const char* fixture_name(FixtureKind kind);

/// Deterministic for a given (kind, seed, distortion) on every platform.
///
/// Patch32: each interior node is moved by distortion * h (h = 0.25) in a
///   seeded random direction; draws that would invert an element are redrawn.
/// GradedInterface: domain [0, 2.25] x [0, 1]; fine pitch 1/8 for x <= 0.75,
///   coarse pitch 1/4 for x >= 1.25. `distortion` jitters the strip nodes.
///   All boundary nodes are Fixed.
/// Horseshoe: seed and distortion are ignored.
/// IndentedBox: [0, 6] x [0, 3], pitch 0.5; the notch over x in [2.5, 3.5] is
///   pressed down to depth distortion * 3 with one-cell ramps. Top nodes
///   outside the notch form two movable chains (ids 0 and 1).
Mesh generate_fixture(FixtureKind kind, std::uint64_t seed, double distortion);

constexpr double kPatchPitch = 0.25;

/// Lowers the Fixed notch-floor nodes of an IndentedBox by `amount`, keeping
/// the ramp profile. Models the die advancing between smoothing rounds.
void press_notch(Mesh& mesh, double amount);

}  // namespace osmot

#endif  // OSMOT_FIXTURES_HPP
