#include <random>
#include <set>
#include <string>

#include <doctest.h>

#include "hypcensus/errors.hpp"
#include "hypcensus/tricomb.hpp"
#include "testutil.hpp"

using namespace hypcensus;

namespace {

FilterSet no_filters() {
  FilterSet f;
  f.orientation_reversing_only = false;
  f.drop_valence_one = false;
  f.drop_valence_two = false;
  f.manifold_only = false;
  return f;
}

FilterSet reversing_only() {
  FilterSet f = no_filters();
  f.orientation_reversing_only = true;
  return f;
}

}  // namespace

TEST_CASE("perm4 tables") {
  CHECK(perm4::kIdentity == 0);
  for (int i = 0; i < 24; ++i) {
    CHECK(perm4::compose(i, perm4::inverse(i)) == perm4::kIdentity);
    CHECK(perm4::compose(perm4::inverse(i), i) == perm4::kIdentity);
  }
  // composition is "a after b"
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) {
      const int c = perm4::compose(a, b);
      for (int v = 0; v < 4; ++v)
        CHECK(perm4::get(c)[v] == perm4::get(a)[perm4::get(b)[v]]);
      CHECK(perm4::parity(c) == (perm4::parity(a) ^ perm4::parity(b)));
    }
}

TEST_CASE("n=1 class counts against the orbit-stabilizer oracle") {
  CHECK(testutil::brute_labeled_count(1, true) == 27);
  const auto rev = enumerate_pairings(1, reversing_only());
  CHECK(rev.size() == 4);
  CHECK(testutil::orbit_sum_matches(rev, 1, true));
  const auto all = enumerate_pairings(1, no_filters());
  CHECK(testutil::orbit_sum_matches(all, 1, false));
}

TEST_CASE("n=2 class counts against the orbit-stabilizer oracle") {
  const auto rev = enumerate_pairings(2, reversing_only());
  CHECK(rev.size() == 35);
  CHECK(testutil::orbit_sum_matches(rev, 2, true));
  FilterSet census;  // all filters on (the defaults)
  CHECK(enumerate_pairings(2, census).size() == 15);
}

TEST_CASE("n=2 all-parity classes match the oracle") {
  const auto all = enumerate_pairings(2, no_filters());
  CHECK(testutil::orbit_sum_matches(all, 2, false));
}

TEST_CASE("fujii pairings: single valence-12 edge, genus-2 boundary") {
  FilterSet census;
  int fujii = 0;
  for (const auto& p : enumerate_pairings(2, census)) {
    const auto ecs = edge_classes(p);
    int total_valence = 0;
    for (const auto& ec : ecs) total_valence += ec.valence();
    CHECK(total_valence == 12);
    CHECK(p.all_reversing());
    CHECK(p.involutive());
    CHECK(is_manifold(p).ok);
    CHECK(p.orientable());
    if (ecs.size() == 1 && ecs[0].valence() == 12) {
      ++fujii;
      const BoundaryPattern bp = boundary_pattern(p);
      REQUIRE(bp.components.size() == 1);
      CHECK(bp.components[0].genus == 2);
      CHECK(bp.components[0].orientable_link);
      CHECK(bp.toric_count == 0);
    }
  }
  CHECK(fujii == 8);
}

TEST_CASE("signature is invariant under random relabelings") {
  std::mt19937 rng(41);
  for (int n = 1; n <= 2; ++n) {
    const auto classes = enumerate_pairings(n, reversing_only());
    for (const auto& p : classes) {
      const std::string sig = canonical_signature(p);
      for (int i = 0; i < 1000 / static_cast<int>(classes.size()) + 5; ++i) {
        const Pairing q = testutil::random_relabel(p, rng);
        CHECK(canonical_signature(q) == sig);
      }
    }
  }
}

TEST_CASE("signatures separate distinct classes") {
  std::set<std::string> sigs;
  const auto classes = enumerate_pairings(2, no_filters());
  for (const auto& p : classes) sigs.insert(canonical_signature(p));
  CHECK(sigs.size() == classes.size());
}

TEST_CASE("text round trip and format validation") {
  for (const auto& p : enumerate_pairings(2, reversing_only())) {
    const Pairing q = Pairing::from_text(p.to_text());
    CHECK(canonical_signature(q) == canonical_signature(p));
  }
  CHECK_THROWS_AS(Pairing::from_text("0:1 0:2\n"), BadPairingFormat);
  CHECK_THROWS_AS(Pairing::from_text("1:0 1:1 1:2 1:3\n"), BadPairingFormat);
  CHECK_THROWS_AS(
      Pairing::from_text("0:0 0:1 0:2 0:3\n"),  // face glued to itself
      BadPairingFormat);
}

TEST_CASE("euler characteristic consistency") {
  // For a manifold-at-edges pairing, the vertex-complement manifold M has
  // chi(M) = chi(boundary)/2, which reduces to chi(boundary) = 2 (E - n).
  for (int n = 1; n <= 2; ++n)
    for (const auto& p : enumerate_pairings(n, no_filters())) {
      if (!is_manifold(p).ok) continue;
      const BoundaryPattern bp = boundary_pattern(p);
      const int e = static_cast<int>(edge_classes(p).size());
      int chi_boundary = 0;
      for (const auto& c : bp.components) chi_boundary += c.chi;
      CHECK(chi_boundary == 2 * (e - p.n));
    }
}

TEST_CASE("relative handlebody description") {
  for (int n = 1; n <= 2; ++n)
    for (const auto& p : enumerate_pairings(n, no_filters())) {
      const YDescription y = build_relative_handlebody(p);
      CHECK(y.genus == n + 1);
      CHECK(y.complexity == 10 * n);
      CHECK(y.volume == doctest::Approx(n * 3.6638623767088772).epsilon(1e-12));
      CHECK(y.loops == static_cast<int>(edge_classes(p).size()));
    }
}

TEST_CASE("pachner moves round trip") {
  std::mt19937 rng(43);
  int checked = 0;
  for (const auto& p : enumerate_pairings(2, reversing_only())) {
    const std::string sig = canonical_signature(p);
    for (int t = 0; t < p.n; ++t)
      for (int f = 0; f < 4; ++f) {
        if (p.at(t, f).tet == t) continue;  // self-gluing: 2-3 undefined
        const Pairing sub = pachner_23(p, t, f);
        CHECK(sub.n == p.n + 1);
        CHECK(sub.involutive());
        // find the valence-3 edge created by the subdivision and undo it
        bool undone = false;
        for (const auto& ec : edge_classes(sub)) {
          if (ec.valence() != 3) continue;
          std::set<int> tets;
          for (const auto& s : ec.slots) tets.insert(s[0]);
          if (tets.size() != 3) continue;
          const auto back = pachner_32(sub, ec);
          if (back && canonical_signature(*back) == sig) {
            undone = true;
            break;
          }
        }
        CHECK(undone);
        ++checked;
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("exceptional valence check") {
  FilterSet census;
  for (const auto& p : enumerate_pairings(2, census)) {
    bool all7 = true;
    for (const auto& ec : edge_classes(p))
      if (ec.valence() < 7) all7 = false;
    CHECK(min_exceptional_valence_check(p) == all7);
  }
}

TEST_CASE("enumerate_pairings size guard") {
  FilterSet census;
  CHECK_THROWS_AS(enumerate_pairings(0, census), UnsupportedSize);
  CHECK_THROWS_AS(enumerate_pairings(9, census), UnsupportedSize);
}
