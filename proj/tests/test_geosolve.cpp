#include <cmath>
#include <random>
#include <set>
#include <variant>

#include <doctest.h>

#include "hypcensus/errors.hpp"
#include "hypcensus/geosolve.hpp"
#include "hypcensus/specfun.hpp"
#include "hypcensus/tricomb.hpp"
#include "testutil.hpp"

using namespace hypcensus;
using testutil::kPi;

namespace {

std::vector<Pairing> fujii_pairings() {
  FilterSet census;
  std::vector<Pairing> out;
  for (const auto& p : enumerate_pairings(2, census)) {
    const auto ecs = edge_classes(p);
    if (ecs.size() == 1 && ecs[0].valence() == 12) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("fujii solutions: angles pi/6, volume 6.451990") {
  const auto fujii = fujii_pairings();
  REQUIRE(fujii.size() == 8);
  for (const auto& p : fujii) {
    const auto res = solve(build_equations(p, {}));
    const auto* sol = std::get_if<GeometricSolution>(&res);
    REQUIRE(sol != nullptr);
    CHECK(sol->residual_norm < 1e-10);
    CHECK(sol->volume == doctest::Approx(6.451990).epsilon(5e-6 / 6.45));
    for (const auto& ang : sol->angles)
      for (int i = 0; i < 6; ++i)
        CHECK(ang[i] == doctest::Approx(kPi / 6).epsilon(1e-9));
  }
}

TEST_CASE("solved structures satisfy the geometric invariants") {
  const auto fujii = fujii_pairings();
  const Pairing& p = fujii.front();
  const EquationSystem sys = build_equations(p, {});
  const auto res = solve(sys);
  const auto* sol = std::get_if<GeometricSolution>(&res);
  REQUIRE(sol != nullptr);
  // angle sums are 2 pi around every edge class
  const auto classes = edge_classes(p);
  const auto slot_class = edge_class_of_slot(p, classes);
  std::vector<double> sums(classes.size(), 0.0);
  for (int t = 0; t < p.n; ++t)
    for (int e = 0; e < 6; ++e) sums[slot_class[t][e]] += sol->angles[t][e];
  for (double s : sums) CHECK(s == doctest::Approx(2 * kPi).epsilon(1e-10));
  // edge lengths agree within each class
  for (int t = 0; t < p.n; ++t) {
    const auto len = edge_lengths(sol->angles[t]);
    for (int e = 0; e < 6; ++e)
      CHECK(len[e] ==
            doctest::Approx(sol->edge_class_lengths[slot_class[t][e]])
                .epsilon(1e-9));
  }
}

TEST_CASE("system jacobian matches finite differences") {
  const auto fujii = fujii_pairings();
  const EquationSystem sys = build_equations(fujii.front(), {});
  std::vector<DihedralAngles> x(2);
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> dist(-0.02, 0.02);
  for (auto& ang : x)
    for (int i = 0; i < 6; ++i) ang[i] = kPi / 6 + dist(rng);
  REQUIRE(sys.in_domain(x));
  const MatX jac = sys.jacobian(x);
  const double h = 1e-6;
  for (int col = 0; col < sys.unknown_count(); ++col) {
    auto up = x, dn = x;
    up[col / 6][col % 6] += h;
    dn[col / 6][col % 6] -= h;
    const auto ru = sys.residual(up), rd = sys.residual(dn);
    for (std::size_t row = 0; row < ru.size(); ++row) {
      const double fd = (ru[row] - rd[row]) / (2 * h);
      CHECK(std::abs(jac(row, col) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("uniqueness probe: jittered starts converge to one volume") {
  const auto fujii = fujii_pairings();
  const EquationSystem sys = build_equations(fujii.front(), {});
  std::set<long long> volumes;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    SolverConfig config;
    config.seed = seed;
    const auto res = solve(sys, config);
    const auto* sol = std::get_if<GeometricSolution>(&res);
    REQUIRE(sol != nullptr);
    volumes.insert(std::llround(sol->volume * 1e9));
  }
  CHECK(volumes.size() == 1);
}

TEST_CASE("volume is invariant under relabeling") {
  std::mt19937 rng(53);
  const auto fujii = fujii_pairings();
  const auto base = solve(build_equations(fujii.front(), {}));
  const double vol = std::get<GeometricSolution>(base).volume;
  for (int i = 0; i < 5; ++i) {
    const Pairing q = testutil::random_relabel(fujii.front(), rng);
    const auto res = solve(build_equations(q, {}));
    const auto* sol = std::get_if<GeometricSolution>(&res);
    REQUIRE(sol != nullptr);
    CHECK(sol->volume == doctest::Approx(vol).epsilon(1e-9));
  }
}

TEST_CASE("low-valence edges give structural left-domain evidence") {
  FilterSet loose;
  loose.drop_valence_one = false;
  loose.drop_valence_two = false;
  int found = 0;
  for (const auto& p : enumerate_pairings(1, loose)) {
    bool low = false;
    for (const auto& ec : edge_classes(p))
      if (ec.valence() <= 2) low = true;
    if (!low) continue;
    ++found;
    const auto res = solve(build_equations(p, {}));
    const auto* ev = std::get_if<NoSolutionEvidence>(&res);
    REQUIRE(ev != nullptr);
    CHECK(ev->kind == FailureKind::LeftDomain);
  }
  CHECK(found > 0);
}

TEST_CASE("octahedral all-zero structures") {
  FilterSet none;
  none.orientation_reversing_only = true;
  none.drop_valence_one = false;
  none.drop_valence_two = false;
  none.manifold_only = false;
  const double v_oct = 8.0 * lobachevsky(kPi / 4);
  for (const auto& p : enumerate_pairings(1, none)) {
    CuspMarks marks;
    marks.all_edges_zero_angle = true;
    const auto res = solve(build_equations(p, marks));
    const auto* sol = std::get_if<GeometricSolution>(&res);
    REQUIRE(sol != nullptr);
    CHECK(sol->all_zero);
    CHECK(sol->volume == doctest::Approx(v_oct).epsilon(1e-12));
  }
}

TEST_CASE("ansatz on compact fujii pairings reproduces the newton solution") {
  const auto fujii = fujii_pairings();
  const GeometricSolution sol = solve_mgk_ansatz(fujii.front(), {});
  CHECK(sol.volume == doctest::Approx(6.451990).epsilon(5e-6 / 6.45));
  for (const auto& ang : sol.angles)
    for (int i = 0; i < 6; ++i)
      CHECK(ang[i] == doctest::Approx(kPi / 6).epsilon(1e-9));
}

TEST_CASE("inconsistent cusp marks are rejected") {
  const auto fujii = fujii_pairings();
  CuspMarks marks;
  marks.ideal_vertex.assign(1, {true, false, false, false});  // wrong size
  CHECK_THROWS_AS(build_equations(fujii.front(), marks), InconsistentMarks);
}
