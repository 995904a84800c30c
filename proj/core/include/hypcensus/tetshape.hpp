#ifndef HYPCENSUS_TETSHAPE_HPP_
#define HYPCENSUS_TETSHAPE_HPP_

#include <array>
#include <limits>

#include "hypcensus/smallmat.hpp"

namespace hypcensus {

/// Six dihedral angles of a hyperbolic tetrahedron, radians.
/// Opposite edge pairs are (A,D), (B,E), (C,F). Edge-to-vertex incidence:
/// A=(1,2) B=(1,3) C=(1,4) D=(3,4) E=(2,4) F=(2,3) with vertices 1..4,
/// so the vertex triples are V1=A+B+C, V2=A+E+F, V3=B+D+F, V4=C+D+E and
/// the Hamiltonian cycles H1=A+B+D+E, H2=A+C+D+F, H3=B+C+E+F.
struct DihedralAngles {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  double operator[](int i) const { return (&a)[i]; }
  double& operator[](int i) { return (&a)[i]; }

  std::array<double, 4> vertex_sums() const {
    return {a + b + c, a + e + f, b + d + f, c + d + e};
  }
  std::array<double, 3> hamilton_sums() const {
    return {a + b + d + e, a + c + d + f, b + c + e + f};
  }
  double total() const { return a + b + c + d + e + f; }
};

enum class VertexType { Finite, Ideal, UltraIdeal };

inline constexpr double kIdealEps = 1e-9;
inline constexpr double kInfLength = std::numeric_limits<double>::infinity();

/// Per-vertex classification by the sign of (vertex sum - pi).
/// Throws DegenerateTetrahedron when a vertex sum is <= 0.
std::array<VertexType, 4> classify_vertices(const DihedralAngles& ang);

/// Gram matrix of the four face planes: diagonal 1, entry (i,j) equal to
/// -cos of the angle on the edge shared by faces i and j (face i opposite
/// vertex i). Negative determinant for every nondegenerate tetrahedron.
Mat4 gram_matrix(const DihedralAngles& ang);

struct VolumeParams {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
  double z1 = 0, z2 = 0;
};

/// The parameters of the endpoint integral representation of the volume.
/// z1, z2 are roots of k1 cos z + k2 sin z = k3, on the branch where the
/// volume integrand vanishes at both of them.
VolumeParams volume_params(const DihedralAngles& ang);

/// Volume by direct adaptive integration between z1 and z2.
double volume_integral(const DihedralAngles& ang);

/// Volume as an algebraic sum of 16 Lobachevsky functions at z1, z2.
double volume_dilog(const DihedralAngles& ang);

/// Ideal tetrahedron volume Lambda(a) + Lambda(b) + Lambda(c); requires
/// a + b + c = pi.
double volume_ideal(double a, double b, double c);

/// Symmetric tetrahedron (A,B,C,A,B,C) with finite vertices: single-variable
/// arcsine integral. Requires a + b + c > pi and a valid theta.
double volume_symmetric(double a, double b, double c);

/// Lengths of the six internal edges, via Gram cofactors; +inf exactly when
/// an edge ends at an ideal vertex. Edge order matches DihedralAngles.
std::array<double, 6> edge_lengths(const DihedralAngles& ang);

/// d(edge_lengths[e]) / d(angle[k]) as a 6x6 array [e][k]; entries for
/// infinite edges are 0. Closed-form, used by the Newton solver.
std::array<std::array<double, 6>, 6> edge_length_jacobian(
    const DihedralAngles& ang);

}  // namespace hypcensus

#endif
