#include "hypcensus/smallmat.hpp"

#include <algorithm>
#include <cmath>

namespace hypcensus {

void sym_eig4(const Mat4& a, Vec4& evals, Mat4& evecs) {
  Mat4 d = a;
  Mat4 v = Mat4::identity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += d[p][q] * d[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(d[p][q]) < 1e-18) continue;
        const double theta = 0.5 * (d[q][q] - d[p][p]) / d[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double dkp = d[k][p], dkq = d[k][q];
          d[k][p] = c * dkp - s * dkq;
          d[k][q] = s * dkp + c * dkq;
        }
        for (int k = 0; k < 4; ++k) {
          const double dpk = d[p][k], dqk = d[q][k];
          d[p][k] = c * dpk - s * dqk;
          d[q][k] = s * dpk + c * dqk;
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  int order[4] = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (d[order[j]][order[j]] < d[order[i]][order[i]])
        std::swap(order[i], order[j]);
  for (int i = 0; i < 4; ++i) {
    evals[i] = d[order[i]][order[i]];
    for (int k = 0; k < 4; ++k) evecs[k][i] = v[k][order[i]];
  }
}

bool lu_solve(MatX A, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = A.rows;
  if (A.cols != n || b.size() != n) return false;
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
    if (std::abs(A(p, k)) < 1e-14) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(k, j));
      std::swap(b[p], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      A(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return true;
}

bool least_squares(const MatX& A, const std::vector<double>& b,
                   std::vector<double>& x) {
  const std::size_t m = A.rows, n = A.cols;
  MatX ata(n, n);
  std::vector<double> atb(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += A(k, i) * A(k, j);
      ata(i, j) = s;
    }
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += A(k, i) * b[k];
    atb[i] = s;
  }
  return lu_solve(ata, atb, x);
}

}  // namespace hypcensus
