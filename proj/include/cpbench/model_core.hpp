#pragma once

#include <span>
#include <vector>

#include "cpbench/dataset.hpp"

namespace cpbench {

struct OlsFit {
  std::vector<double> beta_sub;  // coefficients, one per subset entry
  std::vector<double> mu_hat;    // projection of ys onto the subset span
  double rss = 0.0;
};

// OLS on a column subset of the standardized design (QR-based projection).
// Rejects duplicate/out-of-range indices, |subset| > n-1, and numerically
// rank-deficient submatrices (relative condition above 1e10).
OlsFit ols_subset(const StandardizedDataset& d, std::span<const int> subset);

struct Sigma2Estimate {
  double value = 0.0;
  bool degenerate = false;  // zero residual: value is not usable as a Cp scale
};

// Full-model residual variance RSS/(n-m). Requires n > m and a full-rank
// design.
Sigma2Estimate estimate_sigma2_full(const StandardizedDataset& d);

// rss/sigma2 - n + 2k. Requires sigma2 > 0 and 0 <= k <= n.
double cp_value(double rss, double sigma2, std::size_t n, std::size_t k);

struct CpEntry {
  int k = 0;
  double rss = 0.0;
  double cp = 0.0;
};

struct CpCurve {
  double sigma2_hat = 0.0;
  std::vector<CpEntry> entries;  // strictly increasing k
  int k_min = 0;                 // smallest k attaining the minimal cp
};

// Assemble a curve from (k, rss) pairs; ties in the minimum go to smallest k.
CpCurve make_cp_curve(std::span<const std::pair<int, double>> k_rss, double sigma2,
                      std::size_t n);

}  // namespace cpbench
