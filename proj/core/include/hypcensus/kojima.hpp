#ifndef HYPCENSUS_KOJIMA_HPP_
#define HYPCENSUS_KOJIMA_HPP_

#include <string>
#include <utility>
#include <vector>

#include "hypcensus/geosolve.hpp"
#include "hypcensus/smallmat.hpp"
#include "hypcensus/tricomb.hpp"

namespace hypcensus {

/// Tolerance band around zero for tilt-sum classification, applied after
/// frames are normalized to unit-norm duals.
inline constexpr double kTiltEps = 1e-7;

/// Minkowski realization of one truncated tetrahedron: outward unit face
/// normals, vertex duals (unit spacelike for truncation vertices, on the
/// light cone for ideal ones), and a timelike interior point.
struct MinkowskiFrame {
  std::array<Vec4, 4> duals;
  std::array<Vec4, 4> normals;
  Vec4 center{};
};

/// Lorentzian inner product of signature (3,1), time axis last.
double minkowski_dot(const Vec4& a, const Vec4& b);

/// Realizes tetrahedron `tet` of a solved structure in Minkowski space.
/// The frame reproduces the Gram matrix of its angles to 1e-9.
MinkowskiFrame embed(const GeometricSolution& sol, int tet);

/// Frames of the two tetrahedra adjacent to face (tet, face) developed in
/// common coordinates: the partner frame is moved by the unique Lorentz
/// isometry identifying the shared face duals.
std::pair<MinkowskiFrame, MinkowskiFrame> develop_pair(
    const GeometricSolution& sol, int tet, int face);

/// Tilt sum across an internal face: negative means the dual hull is
/// strictly convex there (canonical), zero means coplanar duals (flat
/// face, cells merge), positive means not canonical.
double tilt_sum(const GeometricSolution& sol, int tet, int face);

struct TiltReport {
  int tet = 0, face = 0;
  double sum = 0;
  int sign = 0;  // -1 / 0 / +1 with respect to kTiltEps
};

/// One report per internal face pair (each unordered pair listed once).
std::vector<TiltReport> tilt_reports(const GeometricSolution& sol);

struct CanonicalCell {
  int tet_count = 1;
  int face_count = 4;  // external faces of the cell
  std::string type;    // "tetrahedron", "octahedron", or "merged:<faces>"
};

struct CanonicalDecomposition {
  Pairing triangulation;
  GeometricSolution solution;
  std::vector<CanonicalCell> cells;
  std::string signature;  // flat-face-flagged canonical signature
  int moves_used = 0;
  bool has_flat_merge = false;
};

/// Drives the structure to the canonical Kojima decomposition with 2-to-3
/// and 3-to-2 moves along offending faces, re-solving after every move.
/// move_budget <= 0 selects the default 50 n.
CanonicalDecomposition canonize(const GeometricSolution& sol,
                                const SolverConfig& config = {},
                                int move_budget = 0);

}  // namespace hypcensus

#endif
