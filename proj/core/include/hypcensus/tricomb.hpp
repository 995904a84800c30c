#ifndef HYPCENSUS_TRICOMB_HPP_
#define HYPCENSUS_TRICOMB_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypcensus {

/// S4 permutation utilities, indexed 0..23 in lexicographic order.
namespace perm4 {
int index_of(const std::array<int, 4>& p);
const std::array<int, 4>& get(int idx);
int inverse(int idx);
int compose(int a, int b);  // (a after b)[x] = a[b[x]]
int parity(int idx);        // 0 even, 1 odd
extern const int kIdentity;
}  // namespace perm4

/// One face gluing: face f of the source tetrahedron maps onto face
/// perm[f] of tetrahedron `tet` by the vertex bijection perm.
struct Gluing {
  int tet = -1;
  int perm = -1;

  bool operator==(const Gluing&) const = default;
};

/// A face pairing on n tetrahedra. glue[t][f] is the partner of face f of
/// tetrahedron t (the face opposite vertex f); the structure is involutive.
struct Pairing {
  int n = 0;
  std::vector<std::array<Gluing, 4>> glue;

  explicit Pairing(int count = 0) : n(count), glue(count) {}

  const Gluing& at(int t, int f) const { return glue[t][f]; }
  void set(int t, int f, int t2, int f2, int perm_idx);
  bool complete() const;
  bool involutive() const;
  /// Every gluing permutation odd (orientation-reversing convention).
  bool all_reversing() const;
  /// Global orientability of the glued complex (any parity mix allowed).
  bool orientable() const;

  /// Text format: header comment with the canonical signature, then one
  /// line per tetrahedron with four "t:p" tokens (p an S4 index, 0..23).
  std::string to_text() const;
  static Pairing from_text(const std::string& text);
};

struct EdgeClass {
  int id = 0;
  /// (tet, lower endpoint, higher endpoint) per incidence.
  std::vector<std::array<int, 3>> slots;
  bool reversing_return = false;  // edge-midpoint link is a projective plane
  bool zero_angle = false;
  bool ideal_end = false;

  int valence() const { return static_cast<int>(slots.size()); }
};

std::vector<EdgeClass> edge_classes(const Pairing& p);

/// Lookup table: class index of edge {v1,v2} of tetrahedron t.
std::vector<std::array<int, 6>> edge_class_of_slot(
    const Pairing& p, const std::vector<EdgeClass>& classes);

/// Edge order within a tetrahedron, matching DihedralAngles A..F.
extern const std::array<std::array<int, 2>, 6> kEdgeSlots;
int edge_slot_index(int v1, int v2);

struct ManifoldReport {
  bool ok = false;
  std::string diagnosis;
};

ManifoldReport is_manifold(const Pairing& p);

struct BoundaryComponent {
  int chi = 0;
  bool orientable_link = true;
  int genus = 0;  // orientable genus when orientable, crosscap count otherwise
  std::vector<std::array<int, 2>> vertices;  // (tet, vertex)
};

struct BoundaryPattern {
  std::vector<BoundaryComponent> components;
  int toric_count = 0;
};

BoundaryPattern boundary_pattern(const Pairing& p);

/// The relative handlebody Y(T) read off a combinatorial pairing.
struct YDescription {
  int genus = 0;       // n + 1
  int loops = 0;       // loop system size on the handlebody boundary
  int complexity = 0;  // 10 n
  double volume = 0;   // n * v_O
  bool orientable = false;
  std::vector<int> edge_valences;
};

YDescription build_relative_handlebody(const Pairing& p);

bool min_exceptional_valence_check(const Pairing& p);

std::string canonical_signature(const Pairing& p);

/// Canonical signature of a pairing together with a per-face boolean mark
/// (e.g. flat faces of a merged decomposition); the pair (signature, marks)
/// is minimized jointly, so equal outputs mean isomorphic marked pairings.
std::string canonical_signature_flagged(
    const Pairing& p, const std::vector<std::array<bool, 4>>& mark);

struct FilterSet {
  bool orientation_reversing_only = true;
  bool drop_valence_one = true;
  bool drop_valence_two = true;
  bool manifold_only = true;
};

/// Emits each pairing up to combinatorial isomorphism exactly once.
/// Throws UnsupportedSize when n exceeds max_size.
void enumerate_pairings(int n, const FilterSet& filters,
                        const std::function<void(const Pairing&)>& sink,
                        int max_size = 3);

std::vector<Pairing> enumerate_pairings(int n, const FilterSet& filters,
                                        int max_size = 3);

/// 2-to-3 Pachner move across internal face (t, f); requires the two glued
/// tetrahedra to be distinct. New tetrahedra are appended as n-2..n.
Pairing pachner_23(const Pairing& p, int t, int f);

/// 3-to-2 move around a valence-3 edge class whose three incidences lie in
/// distinct tetrahedra; nullopt when the configuration does not permit it.
std::optional<Pairing> pachner_32(const Pairing& p, const EdgeClass& edge);

}  // namespace hypcensus

#endif
