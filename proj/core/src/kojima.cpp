#include "hypcensus/kojima.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hypcensus/errors.hpp"
#include "hypcensus/tetshape.hpp"

namespace hypcensus {
namespace {

constexpr double kEta[4] = {1.0, 1.0, 1.0, -1.0};

Vec4 scale(const Vec4& v, double s) {
  return {v[0] * s, v[1] * s, v[2] * s, v[3] * s};
}

}  // namespace

double minkowski_dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

MinkowskiFrame embed(const GeometricSolution& sol, int tet) {
  const Mat4 g = gram_matrix(sol.angles[tet]);
  Vec4 w;
  Mat4 q;
  sym_eig4(g, w, q);
  if (!(w[0] < 0.0) || !(w[1] > 0.0))
    throw DegenerateEmbedding("embed: Gram matrix not of signature (3,1)");
  // face normals as columns of N, rows ordered space, space, space, time
  Mat4 n{};
  const int order[4] = {1, 2, 3, 0};
  for (int r = 0; r < 4; ++r) {
    const int k = order[r];
    const double s = std::sqrt(std::abs(w[k]));
    for (int c = 0; c < 4; ++c) n[r][c] = s * q[c][k];
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int r = 0; r < 4; ++r) dot += kEta[r] * n[r][i] * n[r][j];
      if (std::abs(dot - g[i][j]) > 1e-9)
        throw DegenerateEmbedding("embed: Gram round trip failed");
    }
  // duals: columns of (N^T eta)^{-1}
  Mat4 nte{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) nte[i][j] = n[j][i] * kEta[j];
  const Mat4 winv = inverse4(nte);
  std::array<Vec4, 4> duals{}, normals{};
  for (int i = 0; i < 4; ++i)
    for (int r = 0; r < 4; ++r) duals[i][r] = winv[r][i];
  Vec4 c{};
  for (int i = 0; i < 4; ++i)
    for (int r = 0; r < 4; ++r) c[r] -= duals[i][r];
  if (!(minkowski_dot(c, c) < 0.0))
    throw DegenerateEmbedding("embed: center not timelike");
  double flip = c[3] < 0.0 ? -1.0 : 1.0;
  c = scale(c, flip);
  for (int i = 0; i < 4; ++i) {
    Vec4 v = scale(duals[i], flip);
    const double nrm = minkowski_dot(v, v);
    if (nrm > 1e-9) {
      v = scale(v, 1.0 / std::sqrt(nrm));  // truncation-plane dual
      if (minkowski_dot(c, v) > 0.0) v = scale(v, -1.0);
    } else if (nrm < -1e-9) {
      v = scale(v, 1.0 / std::sqrt(-nrm));  // finite vertex
      if (minkowski_dot(c, v) > 0.0) v = scale(v, -1.0);
    } else {
      // light-cone dual: fix the scale against the interior point
      const double d = minkowski_dot(c, v);
      if (std::abs(d) < 1e-12)
        throw DegenerateEmbedding("embed: unscalable light-cone dual");
      v = scale(v, -1.0 / d);
    }
    duals[i] = v;
  }
  for (int i = 0; i < 4; ++i) {
    Vec4 ni{};
    for (int r = 0; r < 4; ++r) ni[r] = flip * n[r][i];
    if (minkowski_dot(c, ni) > 0.0) ni = scale(ni, -1.0);
    normals[i] = ni;
  }
  MinkowskiFrame frame;
  frame.duals = duals;
  frame.normals = normals;
  frame.center = c;
  return frame;
}

std::pair<MinkowskiFrame, MinkowskiFrame> develop_pair(
    const GeometricSolution& sol, int tet, int face) {
  const Gluing& g = sol.pairing.at(tet, face);
  const auto& pm = perm4::get(g.perm);
  const int f2 = pm[face];
  const MinkowskiFrame fr1 = embed(sol, tet);
  const MinkowskiFrame fr2 = embed(sol, g.tet);
  Mat4 b1{}, b2{};
  int col = 0;
  for (int v = 0; v < 4; ++v) {
    if (v == face) continue;
    for (int r = 0; r < 4; ++r) {
      b1[r][col] = fr1.duals[v][r];
      b2[r][col] = fr2.duals[pm[v]][r];
    }
    ++col;
  }
  for (int r = 0; r < 4; ++r) {
    b1[r][3] = -fr1.normals[face][r];
    b2[r][3] = fr2.normals[f2][r];
  }
  const Mat4 l = b1 * inverse4(b2);
  // verify L is Lorentzian: L^T eta L = eta
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double dot = 0.0;
      for (int r = 0; r < 4; ++r) dot += kEta[r] * l[r][i] * l[r][j];
      const double want = i == j ? kEta[i] : 0.0;
      if (std::abs(dot - want) > 1e-8)
        throw NonMatchingFace("develop_pair: face geometries disagree");
    }
  MinkowskiFrame moved;
  for (int i = 0; i < 4; ++i) {
    moved.duals[i] = l * fr2.duals[i];
    moved.normals[i] = l * fr2.normals[i];
  }
  moved.center = l * fr2.center;
  return {fr1, moved};
}

namespace {

// Signed affine position of e against the hyperplane <x, w> = 1 through
// a, b, c, d (in Lorentzian coordinates).
double halftilt(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d,
                const Vec4& e) {
  MatX m(4, 4);
  const Vec4* rows[4] = {&a, &b, &c, &d};
  for (int r = 0; r < 4; ++r)
    for (int j = 0; j < 4; ++j) m(r, j) = (*rows[r])[j] * kEta[j];
  std::vector<double> w;
  if (!lu_solve(m, {1.0, 1.0, 1.0, 1.0}, w))
    throw DegenerateEmbedding("tilt: degenerate dual hyperplane");
  return minkowski_dot(e, {w[0], w[1], w[2], w[3]}) - 1.0;
}

}  // namespace

double tilt_sum(const GeometricSolution& sol, int tet, int face) {
  const auto [fr1, fr2] = develop_pair(sol, tet, face);
  const int f2 = perm4::get(sol.pairing.at(tet, face).perm)[face];
  const Vec4& q4 = fr2.duals[f2];  // developed dual opposite the face
  const Vec4* tri[3];
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != face) tri[k++] = &fr1.duals[v];
  const double s1 = halftilt(*tri[0], *tri[1], *tri[2], fr1.duals[face], q4);
  const double s2 = halftilt(*tri[0], *tri[1], *tri[2], q4, fr1.duals[face]);
  // negative = strictly convex dual hull across the face
  return -(s1 + s2);
}

std::vector<TiltReport> tilt_reports(const GeometricSolution& sol) {
  std::vector<TiltReport> out;
  std::set<std::pair<int, int>> seen;
  for (int t = 0; t < sol.pairing.n; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (seen.count({t, f})) continue;
      const Gluing& g = sol.pairing.at(t, f);
      seen.insert({t, f});
      seen.insert({g.tet, perm4::get(g.perm)[f]});
      TiltReport rep;
      rep.tet = t;
      rep.face = f;
      rep.sum = tilt_sum(sol, t, f);
      rep.sign = rep.sum > kTiltEps ? 1 : (rep.sum < -kTiltEps ? -1 : 0);
      out.push_back(rep);
    }
  }
  return out;
}

namespace {

struct CellPartition {
  std::vector<int> cell_of_tet;
  int cell_count = 0;
  std::vector<int> tets_in_cell;   // per cell
  std::vector<int> flats_in_cell;  // internal flat face pairs per cell
};

CellPartition partition_by_flats(const Pairing& p,
                                 const std::vector<TiltReport>& flats) {
  CellPartition part;
  std::vector<int> parent(p.n);
  for (int i = 0; i < p.n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const TiltReport& r : flats) {
    const int a = find(r.tet), b = find(p.at(r.tet, r.face).tet);
    if (a != b) parent[a] = b;
  }
  std::map<int, int> index;
  part.cell_of_tet.resize(p.n);
  for (int t = 0; t < p.n; ++t) {
    const int root = find(t);
    auto [it, fresh] = index.emplace(root, part.cell_count);
    if (fresh) ++part.cell_count;
    part.cell_of_tet[t] = it->second;
  }
  part.tets_in_cell.assign(part.cell_count, 0);
  part.flats_in_cell.assign(part.cell_count, 0);
  for (int t = 0; t < p.n; ++t) ++part.tets_in_cell[part.cell_of_tet[t]];
  for (const TiltReport& r : flats)
    ++part.flats_in_cell[part.cell_of_tet[r.tet]];
  return part;
}

CanonicalDecomposition certify(const GeometricSolution& sol,
                               const std::vector<TiltReport>& reports,
                               int moves_used) {
  CanonicalDecomposition out;
  out.triangulation = sol.pairing;
  out.solution = sol;
  out.moves_used = moves_used;
  std::vector<TiltReport> flats;
  for (const TiltReport& r : reports)
    if (r.sign == 0) flats.push_back(r);
  if (flats.empty()) {
    out.cells.assign(sol.pairing.n,
                     {1, 4, sol.all_zero ? "octahedron" : "tetrahedron"});
    out.signature = (sol.all_zero ? "o:" : "") +
                    canonical_signature(sol.pairing);
    return out;
  }
  out.has_flat_merge = true;
  const CellPartition part = partition_by_flats(sol.pairing, flats);
  for (int c = 0; c < part.cell_count; ++c) {
    const int tc = part.tets_in_cell[c], fl = part.flats_in_cell[c];
    // a certifiable merged cell is a tree of tetrahedra (a polyhedral ball)
    if (tc > 1 && fl != tc - 1)
      throw MixedDegenerate(
          "flat faces identify a merged cell with itself; the decomposition "
          "must be worked out by hand");
    CanonicalCell cell;
    cell.tet_count = tc;
    cell.face_count = 4 * tc - 2 * fl;
    cell.type = tc == 1 ? (sol.all_zero ? "octahedron" : "tetrahedron")
                        : "merged:" + std::to_string(cell.face_count);
    out.cells.push_back(cell);
  }
  std::vector<std::array<bool, 4>> mark(sol.pairing.n,
                                        {false, false, false, false});
  for (const TiltReport& r : flats) {
    const Gluing& g = sol.pairing.at(r.tet, r.face);
    mark[r.tet][r.face] = true;
    mark[g.tet][perm4::get(g.perm)[r.face]] = true;
  }
  out.signature = (sol.all_zero ? "o:" : "") +
                  canonical_signature_flagged(sol.pairing, mark);
  return out;
}

GeometricSolution resolve(const Pairing& p, const SolverConfig& config) {
  auto res = solve(build_equations(p, {}), config);
  if (auto* sol = std::get_if<GeometricSolution>(&res)) return *sol;
  throw NonConvergence("canonize: structure failed to re-solve after a move: " +
                       std::get<NoSolutionEvidence>(res).detail);
}

int positive_count(const std::vector<TiltReport>& reports) {
  int n = 0;
  for (const TiltReport& r : reports)
    if (r.sign > 0) ++n;
  return n;
}

}  // namespace

CanonicalDecomposition canonize(const GeometricSolution& sol,
                                const SolverConfig& config, int move_budget) {
  if (move_budget <= 0) move_budget = 50 * sol.pairing.n;
  GeometricSolution cur = sol;
  int moves = 0;
  while (true) {
    const auto reports = tilt_reports(cur);
    const int positives = positive_count(reports);
    if (positives == 0) return certify(cur, reports, moves);
    if (moves >= move_budget)
      throw MoveBudgetExhausted("canonize: move budget exhausted with " +
                                std::to_string(positives) +
                                " offending faces");
    // prefer a 3-to-2 simplification that strictly reduces the offence
    bool applied = false;
    for (const EdgeClass& ec : edge_classes(cur.pairing)) {
      if (ec.valence() != 3) continue;
      auto next = pachner_32(cur.pairing, ec);
      if (!next) continue;
      try {
        GeometricSolution cand = resolve(*next, config);
        if (positive_count(tilt_reports(cand)) < positives) {
          cur = std::move(cand);
          applied = true;
          break;
        }
      } catch (const Error&) {
        // candidate move not geometric; keep looking
      }
    }
    if (!applied) {
      // 2-to-3 along the most offending face, ties by face order
      const TiltReport* worst = nullptr;
      for (const TiltReport& r : reports) {
        if (r.sign <= 0) continue;
        if (cur.pairing.at(r.tet, r.face).tet == r.tet) continue;
        if (!worst || r.sum > worst->sum) worst = &r;
      }
      if (!worst)
        throw MixedDegenerate(
            "canonize: offending faces are all self-gluings; no move applies");
      cur = resolve(pachner_23(cur.pairing, worst->tet, worst->face), config);
      applied = true;
    }
    ++moves;
  }
}

}  // namespace hypcensus
