#include "hypcensus/geosolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"

namespace hypcensus {
namespace {

constexpr double kPi = std::numbers::pi;

// Vertices incident to edge slot e (matches tetshape's edge order A..F).
constexpr int kEnds[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 3}, {1, 2}};

// The three edge slots meeting vertex v.
constexpr int kEdgesAtVertex[4][3] = {{0, 1, 2}, {0, 4, 5}, {1, 3, 5}, {2, 3, 4}};

int other_vertices(int u, int v, int* out) {
  int k = 0;
  for (int x = 0; x < 4; ++x)
    if (x != u && x != v) out[k++] = x;
  return k;
}

}  // namespace

EquationSystem build_equations(const Pairing& p, const CuspMarks& marks) {
  const ManifoldReport rep = is_manifold(p);
  if (!rep.ok) throw NonManifold("build_equations: " + rep.diagnosis);
  EquationSystem sys;
  sys.pairing = p;
  sys.classes = edge_classes(p);
  sys.class_of_slot = edge_class_of_slot(p, sys.classes);
  sys.all_zero = marks.all_edges_zero_angle;
  if (marks.ideal_vertex.empty()) {
    sys.ideal.assign(p.n, {false, false, false, false});
  } else {
    if (static_cast<int>(marks.ideal_vertex.size()) != p.n)
      throw InconsistentMarks("ideal vertex marks must cover every tetrahedron");
    sys.ideal = marks.ideal_vertex;
  }
  // marks must be constant on vertex classes: gluings carry ideal to ideal
  for (int t = 0; t < p.n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = p.at(t, f);
      const auto& pm = perm4::get(g.perm);
      for (int v = 0; v < 4; ++v)
        if (v != f && sys.ideal[t][v] != sys.ideal[g.tet][pm[v]])
          throw InconsistentMarks("ideal marks differ within a vertex class");
    }
  sys.ideal_end.assign(sys.classes.size(), false);
  sys.doubly_infinite.assign(sys.classes.size(), false);
  for (const EdgeClass& ec : sys.classes) {
    bool lo_ideal = false, hi_ideal = false;
    for (const auto& s : ec.slots) {
      if (sys.ideal[s[0]][s[1]]) lo_ideal = true;
      if (sys.ideal[s[0]][s[2]]) hi_ideal = true;
    }
    sys.ideal_end[ec.id] = lo_ideal || hi_ideal;
    sys.doubly_infinite[ec.id] = lo_ideal && hi_ideal;
    if (marks.all_edges_zero_angle && (lo_ideal || hi_ideal))
      throw InconsistentMarks(
          "zero-angle edges cannot end at marked ideal vertices");
  }
  return sys;
}

int EquationSystem::equation_count() const {
  if (all_zero) return 0;
  int count = 0;
  for (const EdgeClass& ec : classes) {
    count += 1;  // angle sum
    if (!ideal_end[ec.id])
      count += ec.valence() - 1;
    else if (doubly_infinite[ec.id])
      count += 1;
  }
  for (int t = 0; t < pairing.n; ++t)
    for (int v = 0; v < 4; ++v)
      if (ideal[t][v]) ++count;
  return count;
}

std::vector<double> EquationSystem::residual(
    const std::vector<DihedralAngles>& x) const {
  std::vector<double> r;
  r.reserve(equation_count());
  std::vector<std::array<double, 6>> len(pairing.n);
  bool have_len = false;
  auto lengths = [&](int t) -> const std::array<double, 6>& {
    if (!have_len) {
      for (int s = 0; s < pairing.n; ++s) len[s] = edge_lengths(x[s]);
      have_len = true;
    }
    return len[t];
  };
  for (const EdgeClass& ec : classes) {
    double sum = 0.0;
    for (const auto& s : ec.slots) sum += x[s[0]][edge_slot_index(s[1], s[2])];
    r.push_back(sum - 2.0 * kPi);
    if (!ideal_end[ec.id]) {
      const auto& s0 = ec.slots[0];
      const double l0 = lengths(s0[0])[edge_slot_index(s0[1], s0[2])];
      for (std::size_t i = 1; i < ec.slots.size(); ++i) {
        const auto& s = ec.slots[i];
        r.push_back(lengths(s[0])[edge_slot_index(s[1], s[2])] - l0);
      }
    } else if (doubly_infinite[ec.id]) {
      // similarity-modulus product condition: log-magnitudes cancel
      double logsum = 0.0;
      for (const auto& s : ec.slots) {
        int oth[2];
        other_vertices(s[1], s[2], oth);
        logsum += std::log(std::sin(x[s[0]][edge_slot_index(s[1], oth[0])])) -
                  std::log(std::sin(x[s[0]][edge_slot_index(s[1], oth[1])]));
      }
      r.push_back(logsum);
    }
  }
  for (int t = 0; t < pairing.n; ++t)
    for (int v = 0; v < 4; ++v)
      if (ideal[t][v]) {
        double sum = 0.0;
        for (int e : kEdgesAtVertex[v]) sum += x[t][e];
        r.push_back(sum - kPi);
      }
  return r;
}

MatX EquationSystem::jacobian(const std::vector<DihedralAngles>& x) const {
  MatX jac(equation_count(), unknown_count());
  std::vector<std::array<std::array<double, 6>, 6>> dl(pairing.n);
  std::vector<bool> have(pairing.n, false);
  auto djac = [&](int t) -> const std::array<std::array<double, 6>, 6>& {
    if (!have[t]) {
      dl[t] = edge_length_jacobian(x[t]);
      have[t] = true;
    }
    return dl[t];
  };
  std::size_t row = 0;
  for (const EdgeClass& ec : classes) {
    for (const auto& s : ec.slots)
      jac(row, 6 * s[0] + edge_slot_index(s[1], s[2])) += 1.0;
    ++row;
    if (!ideal_end[ec.id]) {
      const auto& s0 = ec.slots[0];
      const int e0 = edge_slot_index(s0[1], s0[2]);
      for (std::size_t i = 1; i < ec.slots.size(); ++i) {
        const auto& s = ec.slots[i];
        const int e = edge_slot_index(s[1], s[2]);
        for (int k = 0; k < 6; ++k) {
          jac(row, 6 * s[0] + k) += djac(s[0])[e][k];
          jac(row, 6 * s0[0] + k) -= djac(s0[0])[e0][k];
        }
        ++row;
      }
    } else if (doubly_infinite[ec.id]) {
      for (const auto& s : ec.slots) {
        int oth[2];
        other_vertices(s[1], s[2], oth);
        const int ea = edge_slot_index(s[1], oth[0]);
        const int eb = edge_slot_index(s[1], oth[1]);
        jac(row, 6 * s[0] + ea) += std::cos(x[s[0]][ea]) / std::sin(x[s[0]][ea]);
        jac(row, 6 * s[0] + eb) -= std::cos(x[s[0]][eb]) / std::sin(x[s[0]][eb]);
      }
      ++row;
    }
  }
  for (int t = 0; t < pairing.n; ++t)
    for (int v = 0; v < 4; ++v)
      if (ideal[t][v]) {
        for (int e : kEdgesAtVertex[v]) jac(row, 6 * t + e) += 1.0;
        ++row;
      }
  return jac;
}

bool EquationSystem::in_domain(const std::vector<DihedralAngles>& x) const {
  for (int t = 0; t < pairing.n; ++t) {
    for (int e = 0; e < 6; ++e)
      if (!(x[t][e] > 0.0) || !(x[t][e] < kPi)) return false;
    const auto sums = x[t].vertex_sums();
    // vertex order in vertex_sums(): vertex v's triple is kEdgesAtVertex[v]
    for (int v = 0; v < 4; ++v)
      if (!ideal[t][v] && !(sums[v] < kPi)) return false;
  }
  return true;
}

namespace {

std::vector<DihedralAngles> default_start(const EquationSystem& sys) {
  std::vector<DihedralAngles> x(sys.pairing.n);
  for (const EdgeClass& ec : sys.classes) {
    const double a = std::min(2.0 * kPi / ec.valence(), kPi - 1e-3);
    for (const auto& s : ec.slots)
      x[s[0]][edge_slot_index(s[1], s[2])] = a;
  }
  // pin pi/3 at marked ideal corners so their sums start at pi
  for (int t = 0; t < sys.pairing.n; ++t)
    for (int v = 0; v < 4; ++v)
      if (sys.ideal[t][v])
        for (int e : kEdgesAtVertex[v]) x[t][e] = kPi / 3.0;
  // project into the open admissible set: shrink whole tetrahedra whose
  // unmarked vertex sums reach pi
  for (int t = 0; t < sys.pairing.n; ++t) {
    double worst = 0.0;
    const auto sums = x[t].vertex_sums();
    for (int v = 0; v < 4; ++v)
      if (!sys.ideal[t][v]) worst = std::max(worst, sums[v]);
    if (worst >= kPi - 1e-2) {
      const double scale = (kPi - 1e-2) / worst;
      for (int e = 0; e < 6; ++e) x[t][e] *= scale;
    }
  }
  return x;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double t : v) m = std::max(m, std::abs(t));
  return m;
}

GeometricSolution finish_solution(const EquationSystem& sys,
                                  const std::vector<DihedralAngles>& x,
                                  double residual_norm) {
  GeometricSolution sol;
  sol.pairing = sys.pairing;
  sol.angles = x;
  sol.ideal = sys.ideal;
  sol.residual_norm = residual_norm;
  for (int t = 0; t < sys.pairing.n; ++t) sol.volume += volume_dilog(x[t]);
  for (const EdgeClass& ec : sys.classes) {
    if (sys.ideal_end[ec.id]) {
      sol.edge_class_lengths.push_back(kInfLength);
      continue;
    }
    const auto& s = ec.slots[0];
    sol.edge_class_lengths.push_back(
        edge_lengths(x[s[0]])[edge_slot_index(s[1], s[2])]);
  }
  return sol;
}

GeometricSolution zero_angle_solution(const EquationSystem& sys) {
  GeometricSolution sol;
  sol.pairing = sys.pairing;
  sol.angles.assign(sys.pairing.n, DihedralAngles{});
  sol.ideal = sys.ideal;
  sol.all_zero = true;
  sol.residual_norm = 0.0;
  // an all-zero truncated tetrahedron is a regular ideal octahedron
  sol.volume = sys.pairing.n * 8.0 * lobachevsky(kPi / 4.0);
  sol.edge_class_lengths.assign(sys.classes.size(), 0.0);
  return sol;
}

}  // namespace

SolveResult solve(const EquationSystem& sys, const SolverConfig& config) {
  if (sys.all_zero) return zero_angle_solution(sys);
  for (const EdgeClass& ec : sys.classes)
    if (ec.valence() <= 2)
      return NoSolutionEvidence{
          FailureKind::LeftDomain,
          "edge class " + std::to_string(ec.id) + " has valence " +
              std::to_string(ec.valence()) +
              "; its angle-sum equation forces an angle >= pi"};
  std::vector<DihedralAngles> x =
      config.start.empty() ? default_start(sys) : config.start;
  if (static_cast<int>(x.size()) != sys.pairing.n)
    throw Error("solve: start point has wrong size");
  if (config.seed != 0) {
    std::mt19937 rng(config.seed);
    std::uniform_real_distribution<double> jit(-0.1, 0.1);
    for (auto& a : x)
      for (int e = 0; e < 6; ++e) a[e] = std::max(1e-3, a[e] + jit(rng));
  }
  if (!sys.in_domain(x))
    return NoSolutionEvidence{FailureKind::LeftDomain,
                              "start point outside the admissible set"};
  const int rows = sys.equation_count(), cols = sys.unknown_count();
  std::vector<double> r = sys.residual(x);
  double norm = max_abs(r);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    if (!std::isfinite(norm) || norm > 1e8)
      return NoSolutionEvidence{FailureKind::Diverged,
                                "residual blow-up at iteration " +
                                    std::to_string(iter)};
    if (norm < config.tolerance) return finish_solution(sys, x, norm);
    const MatX jac = sys.jacobian(x);
    std::vector<double> neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    std::vector<double> dx;
    const bool ok = rows == cols ? lu_solve(jac, neg, dx)
                                 : least_squares(jac, neg, dx);
    if (!ok)
      return NoSolutionEvidence{FailureKind::Diverged,
                                "singular Newton system at iteration " +
                                    std::to_string(iter)};
    double lambda = 1.0;
    std::vector<DihedralAngles> trial = x;
    while (true) {
      for (int t = 0; t < sys.pairing.n; ++t)
        for (int e = 0; e < 6; ++e)
          trial[t][e] = x[t][e] + lambda * dx[6 * t + e];
      if (sys.in_domain(trial)) break;
      lambda *= config.damping;
      if (lambda * max_abs(dx) < 1e-14)
        return NoSolutionEvidence{
            FailureKind::LeftDomain,
            "step collapsed on the admissibility boundary at iteration " +
                std::to_string(iter)};
    }
    x = trial;
    r = sys.residual(x);
    norm = max_abs(r);
  }
  return NoSolutionEvidence{FailureKind::MaxIterations,
                            "no convergence in " +
                                std::to_string(config.max_iterations) +
                                " iterations; residual " +
                                std::to_string(norm)};
}

GeometricSolution solve_mgk_ansatz(const Pairing& p, const CuspMarks& marks,
                                   const SolverConfig& config) {
  const EquationSystem sys = build_equations(p, marks);
  if (sys.all_zero)
    throw AnsatzInapplicable("zero-angle marks are not an M_{g,k} structure");
  // per tetrahedron: at most one ideal vertex
  std::vector<int> ideal_at(p.n, -1);
  bool any_ideal = false;
  for (int t = 0; t < p.n; ++t) {
    for (int v = 0; v < 4; ++v) {
      if (!sys.ideal[t][v]) continue;
      if (ideal_at[t] >= 0)
        throw AnsatzInapplicable("tetrahedron has two ideal vertices");
      ideal_at[t] = v;
      any_ideal = true;
    }
  }
  // parameter slot per angle: -1 pinned pi/3, 0 alpha, 1 beta
  std::vector<std::array<int, 6>> pslot(p.n);
  bool uses_alpha = false, uses_beta = false;
  for (int t = 0; t < p.n; ++t) {
    for (int e = 0; e < 6; ++e) {
      if (ideal_at[t] < 0) {
        pslot[t][e] = 1;
        uses_beta = true;
      } else {
        const bool at_ideal = kEnds[e][0] == ideal_at[t] ||
                              kEnds[e][1] == ideal_at[t];
        pslot[t][e] = at_ideal ? -1 : 0;
        if (!at_ideal) uses_alpha = true;
      }
    }
  }
  (void)any_ideal;
  const int np = 2;
  std::array<double, 2> param{};
  {  // initial guess from mean valence of the slots each parameter feeds
    std::array<double, 2> acc{}, cnt{};
    for (const EdgeClass& ec : sys.classes) {
      for (const auto& s : ec.slots) {
        const int ps = pslot[s[0]][edge_slot_index(s[1], s[2])];
        if (ps < 0) continue;
        acc[ps] += 2.0 * kPi / ec.valence();
        cnt[ps] += 1.0;
      }
    }
    param[0] = uses_alpha ? acc[0] / cnt[0] : kPi / 3.0;
    param[1] = uses_beta ? acc[1] / cnt[1] : kPi / 3.0;
  }
  auto assemble = [&](const std::array<double, 2>& prm) {
    std::vector<DihedralAngles> x(p.n);
    for (int t = 0; t < p.n; ++t)
      for (int e = 0; e < 6; ++e)
        x[t][e] = pslot[t][e] < 0 ? kPi / 3.0 : prm[pslot[t][e]];
    return x;
  };
  const int maxit = config.max_iterations > 0 ? config.max_iterations : 200;
  for (int iter = 0; iter < maxit; ++iter) {
    const auto x = assemble(param);
    if (!sys.in_domain(x))
      throw AnsatzInapplicable("ansatz left the admissible set");
    const std::vector<double> r = sys.residual(x);
    const double norm = max_abs(r);
    if (!std::isfinite(norm))
      throw AnsatzInapplicable("ansatz residual not finite");
    if (norm < config.tolerance) return finish_solution(sys, x, norm);
    const MatX jac = sys.jacobian(x);
    MatX reduced(r.size(), np);
    for (std::size_t row = 0; row < r.size(); ++row)
      for (int t = 0; t < p.n; ++t)
        for (int e = 0; e < 6; ++e)
          if (pslot[t][e] >= 0)
            reduced(row, pslot[t][e]) += jac(row, 6 * t + e);
    std::vector<double> neg(r.size()), dxp;
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    // pin unused parameters so the normal equations stay full-rank
    MatX solvable(r.size() + 2, np);
    for (std::size_t row = 0; row < r.size(); ++row)
      for (int c = 0; c < np; ++c) solvable(row, c) = reduced(row, c);
    std::vector<double> negx(neg);
    negx.push_back(0.0);
    negx.push_back(0.0);
    if (!uses_alpha) solvable(r.size(), 0) = 1.0;
    if (!uses_beta) solvable(r.size() + 1, 1) = 1.0;
    if (!least_squares(solvable, negx, dxp))
      throw AnsatzInapplicable("rank-deficient ansatz system");
    double lambda = 1.0;
    while (lambda > 1e-14) {
      std::array<double, 2> trial = {param[0] + lambda * dxp[0],
                                     param[1] + lambda * dxp[1]};
      if (sys.in_domain(assemble(trial))) {
        param = trial;
        break;
      }
      lambda *= 0.5;
    }
    if (lambda <= 1e-14)
      throw AnsatzInapplicable("ansatz step collapsed on the boundary");
  }
  throw AnsatzInapplicable("ansatz Newton did not converge");
}

double solution_volume(const GeometricSolution& sol) {
  if (sol.all_zero)
    return sol.pairing.n * 8.0 * lobachevsky(kPi / 4.0);
  double v = 0.0;
  for (const auto& a : sol.angles) v += volume_dilog(a);
  return v;
}

}  // namespace hypcensus
