#ifndef HYPCENSUS_TESTS_TESTUTIL_HPP_
#define HYPCENSUS_TESTS_TESTUTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hypcensus/smallmat.hpp"
#include "hypcensus/tetshape.hpp"
#include "hypcensus/tricomb.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

/// Realizability of a dihedral-angle tuple as a (possibly truncated)
/// hyperbolic tetrahedron: negative Gram determinant and positive
/// off-diagonal cofactors.
inline bool realizable(const hypcensus::DihedralAngles& ang) {
  using namespace hypcensus;
  for (int i = 0; i < 6; ++i)
    if (!(ang[i] > 0.0) || !(ang[i] < kPi)) return false;
  const Mat4 g = gram_matrix(ang);
  if (det4(g) >= -1e-12) return false;
  const Mat4 adj = adjugate4(g);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && adj[i][j] <= 1e-12) return false;
  return true;
}

/// Random realizable tuple with small angles (ultra-ideal vertices likely).
inline hypcensus::DihedralAngles sample_ultra(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  while (true) {
    hypcensus::DihedralAngles ang;
    for (int i = 0; i < 6; ++i) ang[i] = dist(rng);
    if (realizable(ang)) return ang;
  }
}

/// Random realizable tuple with all four vertices finite: perturbation of
/// the regular compact tetrahedron, accepted when all vertex sums > pi.
inline hypcensus::DihedralAngles sample_finite(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-0.08, 0.08);
  while (true) {
    hypcensus::DihedralAngles ang;
    for (int i = 0; i < 6; ++i) ang[i] = 1.15 + dist(rng);
    if (!realizable(ang)) continue;
    bool finite = true;
    for (double s : ang.vertex_sums())
      if (s <= kPi + 1e-6) finite = false;
    if (finite) return ang;
  }
}

/// Random realizable tuple with vertex 1 exactly ideal (A + B + C = pi).
inline hypcensus::DihedralAngles sample_ideal(std::mt19937& rng) {
  std::uniform_real_distribution<double> ab(0.3, 1.2);
  std::uniform_real_distribution<double> rest(0.1, 0.9);
  while (true) {
    hypcensus::DihedralAngles ang;
    ang.a = ab(rng);
    ang.b = ab(rng);
    if (ang.a + ang.b >= kPi - 0.1) continue;
    ang.c = kPi - ang.a - ang.b;
    ang.d = rest(rng);
    ang.e = rest(rng);
    ang.f = rest(rng);
    if (realizable(ang)) return ang;
  }
}

/// Random realizable symmetric tuple (A,B,C,A,B,C) with finite vertices.
inline hypcensus::DihedralAngles sample_symmetric_finite(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  while (true) {
    hypcensus::DihedralAngles ang;
    ang.a = ang.d = 1.15 + dist(rng);
    ang.b = ang.e = 1.15 + dist(rng);
    ang.c = ang.f = 1.15 + dist(rng);
    if (!realizable(ang)) continue;
    bool finite = true;
    for (double s : ang.vertex_sums())
      if (s <= kPi + 1e-6) finite = false;
    if (finite) return ang;
  }
}

/// Applies a relabeling (tetrahedron permutation sigma, vertex permutation
/// lambda_t per tetrahedron) to a pairing.
inline hypcensus::Pairing relabel(const hypcensus::Pairing& p,
                                  const std::vector<int>& sigma,
                                  const std::vector<int>& lambda) {
  using namespace hypcensus;
  Pairing q(p.n);
  for (int t = 0; t < p.n; ++t) {
    const auto& lt = perm4::get(lambda[t]);
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = p.at(t, f);
      const auto& lu = perm4::get(lambda[g.tet]);
      // new gluing between (sigma(t), lt(f)) and sigma(g.tet), with vertex
      // map lu o g.perm o lt^{-1}
      const int pm = perm4::compose(
          perm4::compose(lambda[g.tet], g.perm), perm4::inverse(lambda[t]));
      q.glue[sigma[t]][lt[f]] = {sigma[g.tet], pm};
    }
  }
  return q;
}

inline hypcensus::Pairing random_relabel(const hypcensus::Pairing& p,
                                         std::mt19937& rng) {
  std::vector<int> sigma(p.n), lambda(p.n);
  for (int t = 0; t < p.n; ++t) sigma[t] = t;
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::uniform_int_distribution<int> d24(0, 23);
  for (int t = 0; t < p.n; ++t) lambda[t] = d24(rng);
  return relabel(p, sigma, lambda);
}

/// Brute-force count of labeled connected involutive pairings on n
/// tetrahedra (no pruning, no isomorphism quotient). Independent of the
/// library's enumeration machinery except for the Pairing container.
inline long long brute_labeled_count(int n, bool reversing_only) {
  using namespace hypcensus;
  auto connected = [&](const Pairing& p) {
    std::vector<char> seen(p.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const int u = p.at(t, f).tet;
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    for (int t = 0; t < p.n; ++t)
      if (!seen[t]) return false;
    return true;
  };
  long long count = 0;
  Pairing p(n);
  std::function<void(int)> rec = [&](int slot) {
    while (slot < 4 * n && p.glue[slot / 4][slot % 4].tet >= 0) ++slot;
    if (slot == 4 * n) {
      if (connected(p)) ++count;
      return;
    }
    const int t = slot / 4, f = slot % 4;
    for (int t2 = t; t2 < n; ++t2)
      for (int f2 = (t2 == t ? f + 1 : 0); f2 < 4; ++f2) {
        if (p.glue[t2][f2].tet >= 0) continue;
        for (int pm = 0; pm < 24; ++pm) {
          if (perm4::get(pm)[f] != f2) continue;
          if (reversing_only && perm4::parity(pm) != 1) continue;
          p.set(t, f, t2, f2, pm);
          rec(slot + 1);
          p.glue[t][f] = {};
          p.glue[t2][f2] = {};
        }
      }
  };
  rec(0);
  return count;
}

/// Number of relabelings fixing the pairing. When same_parity_only is set,
/// only relabelings whose vertex permutations share one parity are counted:
/// these are exactly the relabelings preserving the orientation-reversing
/// property on connected pairings.
inline long long stabilizer_size(const hypcensus::Pairing& p,
                                 bool same_parity_only) {
  using namespace hypcensus;
  auto equal = [&](const Pairing& a, const Pairing& b) {
    for (int t = 0; t < a.n; ++t)
      for (int f = 0; f < 4; ++f)
        if (a.at(t, f).tet != b.at(t, f).tet ||
            a.at(t, f).perm != b.at(t, f).perm)
          return false;
    return true;
  };
  std::vector<int> sigma(p.n);
  for (int t = 0; t < p.n; ++t) sigma[t] = t;
  long long count = 0;
  do {
    std::vector<int> lambda(p.n, 0);
    while (true) {
      bool ok = true;
      if (same_parity_only)
        for (int t = 1; t < p.n; ++t)
          if (perm4::parity(lambda[t]) != perm4::parity(lambda[0])) ok = false;
      if (ok && equal(relabel(p, sigma, lambda), p)) ++count;
      int t = 0;
      while (t < p.n && ++lambda[t] == 24) lambda[t++] = 0;
      if (t == p.n) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return count;
}

/// Orbit-stabilizer cross-check: the classes emitted by the library must
/// jointly account for every labeled pairing, i.e.
///   sum over classes of |relabeling group| / |stabilizer| = labeled count.
inline bool orbit_sum_matches(const std::vector<hypcensus::Pairing>& classes,
                              int n, bool reversing_only) {
  long long group = 1;  // n! * 24^n, halved per extra tetrahedron when
  for (int t = 2; t <= n; ++t) group *= t;
  for (int t = 0; t < n; ++t) group *= 24;
  if (reversing_only)
    for (int t = 1; t < n; ++t) group /= 2;  // same-parity subgroup
  long long total = 0;
  for (const auto& p : classes) total += group / stabilizer_size(p, reversing_only);
  return total == brute_labeled_count(n, reversing_only);
}

}  // namespace testutil

#endif
