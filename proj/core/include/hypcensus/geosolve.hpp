#ifndef HYPCENSUS_GEOSOLVE_HPP_
#define HYPCENSUS_GEOSOLVE_HPP_

#include <string>
#include <variant>
#include <vector>

#include "hypcensus/smallmat.hpp"
#include "hypcensus/tetshape.hpp"
#include "hypcensus/tricomb.hpp"

namespace hypcensus {

/// Cusp decorations for a pairing. Empty ideal_vertex means the compact
/// case (every vertex a truncation vertex). all_edges_zero_angle selects
/// the octahedral structures, where every dihedral angle is pinned to 0.
struct CuspMarks {
  std::vector<std::array<bool, 4>> ideal_vertex;
  bool all_edges_zero_angle = false;
};

/// The hyperbolicity equations of a marked pairing in the 6n dihedral-angle
/// unknowns: one angle-sum = 2pi equation per edge class, length equalities
/// within each class (dropped when the class has an ideal end), one
/// log-modulus consistency equation for doubly infinite classes, and one
/// angle-sum = pi equation per marked ideal vertex corner.
struct EquationSystem {
  Pairing pairing;
  std::vector<EdgeClass> classes;
  std::vector<std::array<int, 6>> class_of_slot;
  std::vector<std::array<bool, 4>> ideal;  // resolved per (tet, vertex)
  std::vector<bool> ideal_end;             // per class
  std::vector<bool> doubly_infinite;       // per class
  bool all_zero = false;

  int unknown_count() const { return 6 * pairing.n; }
  int equation_count() const;
  std::vector<double> residual(const std::vector<DihedralAngles>& x) const;
  MatX jacobian(const std::vector<DihedralAngles>& x) const;
  /// Strict admissibility: angles in (0, pi), unmarked vertex sums < pi.
  bool in_domain(const std::vector<DihedralAngles>& x) const;
};

EquationSystem build_equations(const Pairing& p, const CuspMarks& marks);

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 200;
  double damping = 0.5;       // backtracking halving factor
  unsigned seed = 0;          // nonzero: jitter the default start point
  std::vector<DihedralAngles> start;  // optional explicit start point
};

struct GeometricSolution {
  Pairing pairing;
  std::vector<DihedralAngles> angles;
  std::vector<std::array<bool, 4>> ideal;
  bool all_zero = false;  // octahedral (all dihedral angles 0) structure
  double residual_norm = 0;
  double volume = 0;
  std::vector<double> edge_class_lengths;  // per edge class, +inf if ideal end
};

enum class FailureKind { Diverged, LeftDomain, MaxIterations };

struct NoSolutionEvidence {
  FailureKind kind = FailureKind::Diverged;
  std::string detail;
};

using SolveResult = std::variant<GeometricSolution, NoSolutionEvidence>;

/// Damped Newton (Gauss-Newton when the system is not square) on the
/// hyperbolicity equations. Failure is evidence, never a verdict.
SolveResult solve(const EquationSystem& system, const SolverConfig& config = {});

/// Two-parameter symmetric ansatz for the M_{g,k} family: pi/3 on edges at
/// each marked ideal vertex, alpha on the other edges of marked tetrahedra,
/// beta on all edges of unmarked tetrahedra.
GeometricSolution solve_mgk_ansatz(const Pairing& p, const CuspMarks& marks,
                                   const SolverConfig& config = {});

/// Total volume of a solved structure recomputed from its tetrahedra.
double solution_volume(const GeometricSolution& sol);

}  // namespace hypcensus

#endif
