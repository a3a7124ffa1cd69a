// Test-only oracles, kept independent of the library's solver paths.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpbench/mat.hpp"

namespace oracle {

// Solve the normal equations (X_S^T X_S) b = X_S^T y by Gaussian elimination
// with partial pivoting. Brute force on purpose.
inline std::vector<double> normal_equations(const cpbench::Mat& x,
                                            std::span<const int> cols,
                                            std::span<const double> y) {
  const std::size_t n = x.rows, k = cols.size();
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += x(i, static_cast<std::size_t>(cols[p])) * x(i, static_cast<std::size_t>(cols[q]));
      a[p][q] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, static_cast<std::size_t>(cols[p])) * y[i];
    a[p][k] = s;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    if (a[col][col] == 0.0) throw std::runtime_error("oracle: singular system");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t q = col; q <= k; ++q) a[r][q] -= f * a[col][q];
    }
  }
  std::vector<double> b(k);
  for (std::size_t p = 0; p < k; ++p) b[p] = a[p][k] / a[p][p];
  return b;
}

// Dense beta^T Sigma beta with Sigma_jk = rho^|j-k| (m x m, no banding).
inline double dense_quadratic_form(std::span<const double> beta, double rho) {
  const std::size_t m = beta.size();
  double q = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      q += beta[j] * beta[k] * std::pow(rho, std::abs(static_cast<double>(j) -
                                                      static_cast<double>(k)));
  return q;
}

}  // namespace oracle
