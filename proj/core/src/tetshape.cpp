#include "hypcensus/tetshape.hpp"

#include <cmath>
#include <numbers>

#include "hypcensus/errors.hpp"
#include "hypcensus/specfun.hpp"

namespace hypcensus {
namespace {

constexpr double kPi = std::numbers::pi;

// Endpoints of each edge, 0-indexed vertices; order A..F.
constexpr int kEdgeEnds[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 3}, {1, 2}};
// Position of -cos(angle) in the face Gram matrix, 0-indexed faces.
constexpr int kEdgeGramPos[6][2] = {{2, 3}, {1, 3}, {1, 2},
                                    {0, 1}, {0, 2}, {0, 3}};

void check_angles(const DihedralAngles& ang) {
  for (int i = 0; i < 6; ++i)
    if (!(ang[i] >= 0.0) || ang[i] >= kPi)
      throw DegenerateTetrahedron("dihedral angle outside [0, pi)");
  for (double s : ang.vertex_sums())
    if (s <= 0.0) throw DegenerateTetrahedron("vertex angle sum <= 0");
}

// Argument of the logarithm in the endpoint integral representation.
double integrand_arg(const DihedralAngles& ang, double z) {
  const auto v = ang.vertex_sums();
  const auto h = ang.hamilton_sums();
  double num = 1.0;
  for (double vj : v) num *= std::cos(0.5 * (vj + z));
  double den = std::sin(0.5 * z);
  for (double hj : h) den *= std::sin(0.5 * (hj + z));
  return num / den;
}

}  // namespace

std::array<VertexType, 4> classify_vertices(const DihedralAngles& ang) {
  check_angles(ang);
  std::array<VertexType, 4> out;
  const auto sums = ang.vertex_sums();
  for (int i = 0; i < 4; ++i) {
    const double excess = sums[i] - kPi;
    if (excess > kIdealEps)
      out[i] = VertexType::Finite;
    else if (excess < -kIdealEps)
      out[i] = VertexType::UltraIdeal;
    else
      out[i] = VertexType::Ideal;
  }
  return out;
}

Mat4 gram_matrix(const DihedralAngles& ang) {
  Mat4 g = Mat4::identity();
  for (int e = 0; e < 6; ++e) {
    const int p = kEdgeGramPos[e][0], q = kEdgeGramPos[e][1];
    g[p][q] = g[q][p] = -std::cos(ang[e]);
  }
  return g;
}

VolumeParams volume_params(const DihedralAngles& ang) {
  check_angles(ang);
  const double a = ang.a, b = ang.b, c = ang.c;
  const double d = ang.d, e = ang.e, f = ang.f;
  const double s = ang.total();
  const double args[8] = {s,         a + d,     b + e,     c + f,
                          d + e + f, d + b + c, a + e + c, a + b + f};
  VolumeParams p;
  for (double t : args) {
    p.k1 -= std::cos(t);
    p.k2 += std::sin(t);
  }
  p.k3 = 2.0 * (std::sin(a) * std::sin(d) + std::sin(b) * std::sin(e) +
                std::sin(c) * std::sin(f));
  const double disc = p.k1 * p.k1 + p.k2 * p.k2 - p.k3 * p.k3;
  if (disc <= 0.0)
    throw DegenerateTetrahedron("volume_params: flat or unrealizable shape");
  p.k4 = std::sqrt(disc);

  // z1, z2 solve k1 cos z + k2 sin z = k3; the correct branch is the one
  // where the integrand argument tends to 1 at both endpoints.
  const double psi = std::atan2(p.k4, p.k3);
  const double phi0 = std::atan2(p.k2, p.k1);
  double best_score = 0.0;
  bool found = false;
  for (double shift : {0.0, kPi, -kPi, 2.0 * kPi}) {
    const double phi = phi0 + shift;
    const double z1 = phi - psi, z2 = phi + psi;
    const double delta = (z2 - z1) * 1e-7 + 1e-12;
    // arg -> 1 at both endpoints on the right branch; in between it may
    // cross zero for truncated shapes, so no interior sign requirement
    const double g1 = integrand_arg(ang, z1 + delta);
    const double g2 = integrand_arg(ang, z2 - delta);
    if (!(g1 > 0.0) || !(g2 > 0.0)) continue;
    const double score =
        std::max(std::abs(std::log(g1)), std::abs(std::log(g2)));
    if (!found || score < best_score) {
      found = true;
      best_score = score;
      p.z1 = z1;
      p.z2 = z2;
    }
  }
  if (!found || best_score > 1e-2) {
    // endpoint factors can degenerate (ideal vertices make a vertex-sum
    // cosine cancel the sin(z/2) pole); fall back to the continuous branch
    // with phi in (0, pi), valid whenever k2 > 0
    if (p.k2 > 0.0) {
      p.z1 = phi0 - psi;
      p.z2 = phi0 + psi;
      return p;
    }
    throw BranchUndefined("volume_params: no endpoint-vanishing branch");
  }
  return p;
}

double volume_integral(const DihedralAngles& ang) {
  const VolumeParams p = volume_params(ang);
  const double span = p.z2 - p.z1;
  if (span <= 0.0) return 0.0;
  // shrink by a hair: the integrand has log endpoint zeros
  const double eps = span * 1e-14;
  const double val = integrate(
      [&](double z) { return std::log(std::abs(integrand_arg(ang, z))); },
      p.z1 + eps, p.z2 - eps, 1e-11, 400000);
  return -0.25 * val;
}

namespace {

double im_u(const DihedralAngles& ang, double z) {
  const auto v = ang.vertex_sums();
  const auto h = ang.hamilton_sums();
  double out = lobachevsky(0.5 * z);
  for (double hj : h) out += lobachevsky(0.5 * (hj + z));
  for (double vj : v) out -= lobachevsky(0.5 * (kPi + vj + z));
  return out;
}

}  // namespace

double volume_dilog(const DihedralAngles& ang) {
  const VolumeParams p = volume_params(ang);
  return 0.5 * (im_u(ang, p.z1) - im_u(ang, p.z2));
}

double volume_ideal(double a, double b, double c) {
  if (std::abs(a + b + c - kPi) > 1e-8)
    throw NotIdeal("volume_ideal: angles must sum to pi");
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw DegenerateTetrahedron("volume_ideal: nonpositive angle");
  return lobachevsky(a) + lobachevsky(b) + lobachevsky(c);
}

double volume_symmetric(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || a >= kPi || b >= kPi ||
      c >= kPi)
    throw DegenerateTetrahedron("volume_symmetric: angle outside (0, pi)");
  if (a + b + c <= kPi)
    throw NotFiniteSymmetric("volume_symmetric: vertices are not finite");
  const double ca = std::cos(a), cb = std::cos(b), cc = std::cos(c);
  const double num =
      1.0 - ca * ca - cb * cb - cc * cc - 2.0 * ca * cb * cc;
  const double den = (1.0 - ca + cb + cc) * (1.0 + ca - cb + cc) *
                     (1.0 + ca + cb - cc) * (-1.0 + ca + cb + cc);
  if (den <= 0.0)
    throw NotFiniteSymmetric("volume_symmetric: root argument not positive");
  // realizability: every Gram cofactor positive (finite vertices included)
  const Mat4 adj = adjugate4(gram_matrix({a, b, c, a, b, c}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!(adj[i][j] > 0.0))
        throw NotFiniteSymmetric("volume_symmetric: not a finite tetrahedron");
  const double theta = std::atan2(num, std::sqrt(den));
  if (!(theta > 0.0) || theta >= 0.5 * kPi)
    throw NotFiniteSymmetric("volume_symmetric: degenerate theta");
  auto f = [&](double t) {
    const double ct = std::cos(t);
    return (std::asin(ca * ct) + std::asin(cb * ct) + std::asin(cc * ct) -
            std::asin(ct)) /
           std::sin(2.0 * t);
  };
  return 2.0 * integrate(f, theta, 0.5 * kPi, 1e-11, 400000);
}

std::array<double, 6> edge_lengths(const DihedralAngles& ang) {
  const auto types = classify_vertices(ang);
  const Mat4 adj = adjugate4(gram_matrix(ang));
  std::array<double, 6> out{};
  for (int e = 0; e < 6; ++e) {
    const int i = kEdgeEnds[e][0], j = kEdgeEnds[e][1];
    if (types[i] == VertexType::Ideal || types[j] == VertexType::Ideal) {
      out[e] = kInfLength;
      continue;
    }
    const double cii = adj[i][i], cjj = adj[j][j], cij = adj[i][j];
    const bool ui = types[i] == VertexType::UltraIdeal;
    const bool uj = types[j] == VertexType::UltraIdeal;
    if (ui == uj) {
      const double u = std::abs(cij) / std::sqrt(cii * cjj);
      out[e] = std::acosh(std::max(u, 1.0));
    } else {
      out[e] = std::asinh(std::abs(cij) / std::sqrt(-cii * cjj));
    }
  }
  return out;
}

std::array<std::array<double, 6>, 6> edge_length_jacobian(
    const DihedralAngles& ang) {
  const auto types = classify_vertices(ang);
  const Mat4 g = gram_matrix(ang);
  const Mat4 adj = adjugate4(g);
  const Mat4 ginv = inverse4(g);
  std::array<std::array<double, 6>, 6> jac{};
  for (int k = 0; k < 6; ++k) {
    // dG/d(angle k): sin(angle) at the two symmetric Gram positions
    const int p = kEdgeGramPos[k][0], q = kEdgeGramPos[k][1];
    const double s = std::sin(ang[k]);
    // d adj = tr(Ginv dG) adj - Ginv dG adj
    const double trace = 2.0 * s * ginv[p][q];
    Mat4 m{};  // Ginv * dG * adj
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        m[r][c] = s * (ginv[r][p] * adj[q][c] + ginv[r][q] * adj[p][c]);
    for (int e = 0; e < 6; ++e) {
      const int i = kEdgeEnds[e][0], j = kEdgeEnds[e][1];
      if (types[i] == VertexType::Ideal || types[j] == VertexType::Ideal)
        continue;
      const double cii = adj[i][i], cjj = adj[j][j], cij = adj[i][j];
      const double dcii = trace * adj[i][i] - m[i][i];
      const double dcjj = trace * adj[j][j] - m[j][j];
      const double dcij = trace * adj[i][j] - m[i][j];
      const double sgn = cij < 0.0 ? -1.0 : 1.0;
      const bool ui = types[i] == VertexType::UltraIdeal;
      const bool uj = types[j] == VertexType::UltraIdeal;
      const double r2 = ui == uj ? cii * cjj : -cii * cjj;
      const double u = std::abs(cij) / std::sqrt(r2);
      const double du =
          sgn * dcij / std::sqrt(r2) - 0.5 * u * (dcii / cii + dcjj / cjj);
      if (ui == uj) {
        const double w = u * u - 1.0;
        jac[e][k] = w <= 0.0 ? 0.0 : du / std::sqrt(w);
      } else {
        jac[e][k] = du / std::sqrt(u * u + 1.0);
      }
    }
  }
  return jac;
}

}  // namespace hypcensus
