#pragma once

#include <span>
#include <vector>

#include "cpbench/mat.hpp"

namespace cpbench {

struct LeastSquares {
  std::vector<double> coef;    // one per selected column
  std::vector<double> fitted;  // projection of y onto the selected span
  double rss = 0.0;
};

// Least squares on a column subset of X via Householder QR. The fitted vector
// is the exact projection Q1 Q1^T y. Throws DataError when the R diagonal
// signals a condition estimate above max_condition.
LeastSquares qr_least_squares(const Mat& X, std::span<const int> cols,
                              std::span<const double> y,
                              double max_condition = 1e10);

// Row-packed lower-triangular Cholesky factor. Supports one-shot factorization
// of an SPD matrix and incremental growth by one row (used for the active-set
// Gram along a path). Pivots at or below tol fail instead of producing NaNs.
class Cholesky {
 public:
  bool factor(const Mat& a, double tol = 0.0);
  bool append(const double* cross, double diag, double tol = 0.0);
  void reset() { dim_ = 0; rows_.clear(); }

  int dim() const { return dim_; }
  double diag(int i) const { return rows_[static_cast<std::size_t>(i) * (i + 1) / 2 + i]; }

  void solve_lower(const double* b, double* z) const;  // L z = b
  void solve_upper(const double* z, double* x) const;  // L^T x = z
  void solve(const double* b, double* x) const;        // L L^T x = b

 private:
  int dim_ = 0;
  std::vector<double> rows_;  // row i at offset i(i+1)/2, length i+1
};

}  // namespace cpbench
