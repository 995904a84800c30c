#ifndef HYPCENSUS_SMALLMAT_HPP_
#define HYPCENSUS_SMALLMAT_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hypcensus/errors.hpp"

namespace hypcensus {

using Vec4 = std::array<double, 4>;

struct Mat4 {
  double m[4][4] = {};

  double* operator[](int r) { return m[r]; }
  const double* operator[](int r) const { return m[r]; }

  static Mat4 identity() {
    Mat4 a;
    for (int i = 0; i < 4; ++i) a.m[i][i] = 1.0;
    return a;
  }
};

inline Vec4 operator*(const Mat4& a, const Vec4& x) {
  Vec4 y{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) y[i] += a.m[i][j] * x[j];
  return y;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c.m[i][j] += a.m[i][k] * b.m[k][j];
  return c;
}

inline double det3(double a, double b, double c, double d, double e, double f,
                   double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

inline double det4(const Mat4& A) {
  const auto& m = A.m;
  double d = 0.0;
  for (int c = 0; c < 4; ++c) {
    double sub[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int k = 0; k < 4; ++k) {
        if (k == c) continue;
        sub[r - 1][cc++] = m[r][k];
      }
    }
    const double minor =
        det3(sub[0][0], sub[0][1], sub[0][2], sub[1][0], sub[1][1], sub[1][2],
             sub[2][0], sub[2][1], sub[2][2]);
    d += ((c % 2) ? -1.0 : 1.0) * m[0][c] * minor;
  }
  return d;
}

/// Classical adjugate: adj(A)[i][j] = cofactor C_ji, so A * adj(A) = det(A) I.
/// For symmetric A the matrix of cofactors equals the adjugate.
inline Mat4 adjugate4(const Mat4& A) {
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double sub[3][3];
      int rr = 0;
      for (int r = 0; r < 4; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
          if (c == j) continue;
          sub[rr][cc++] = A.m[r][c];
        }
        ++rr;
      }
      const double minor =
          det3(sub[0][0], sub[0][1], sub[0][2], sub[1][0], sub[1][1],
               sub[1][2], sub[2][0], sub[2][1], sub[2][2]);
      out.m[j][i] = (((i + j) % 2) ? -1.0 : 1.0) * minor;
    }
  }
  return out;
}

inline Mat4 inverse4(const Mat4& A) {
  const double d = det4(A);
  if (std::abs(d) < 1e-300) throw Error("inverse4: singular matrix");
  Mat4 adj = adjugate4(A);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) adj.m[i][j] /= d;
  return adj;
}

/// Dense row-major matrix for the Newton systems.
struct MatX {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  MatX() = default;
  MatX(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return a[r * cols + c];
  }
};

/// Eigendecomposition of a symmetric 4x4 matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascending in evals; eigenvectors as the columns of evecs.
void sym_eig4(const Mat4& a, Vec4& evals, Mat4& evecs);

/// Solves A x = b in place by Gaussian elimination with partial pivoting.
/// A must be square. Returns false if A is numerically singular.
bool lu_solve(MatX A, std::vector<double> b, std::vector<double>& x);

/// Least-squares solution of an overdetermined A x = b through the normal
/// equations. Returns false on rank deficiency.
bool least_squares(const MatX& A, const std::vector<double>& b,
                   std::vector<double>& x);

}  // namespace hypcensus

#endif
