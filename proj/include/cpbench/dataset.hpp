#pragma once

#include <string>
#include <vector>

#include "cpbench/mat.hpp"

namespace cpbench {

// Design matrix plus response; simulated data also carries the ground truth.
struct Dataset {
  Mat X;                           // n x m, rows = observations
  std::vector<double> y;           // n
  std::vector<double> mu_true;     // n, empty when unknown
  std::vector<double> beta_true;   // m, empty when unknown
  std::vector<std::string> names;  // m labels, empty when unnamed

  std::size_t n() const { return X.rows; }
  std::size_t m() const { return X.cols; }

  // n >= 2, m >= 1, everything finite, and mu_true == X beta_true when both
  // are present (1e-10 relative). Throws DataError.
  void validate() const;
};

struct StandardizedDataset {
  Mat Xs;                             // centered columns, unit Euclidean norm
  std::vector<double> ys;             // centered response
  std::vector<double> column_means;   // m
  std::vector<double> column_scales;  // m (centered column norms)
  double y_mean = 0.0;

  std::size_t n() const { return Xs.rows; }
  std::size_t m() const { return Xs.cols; }
};

// Center each column and scale to unit norm; center the response. A constant
// column is rejected with its index. Idempotent on already-standardized data.
StandardizedDataset standardize(const Dataset& d);

// Pass-through for designs whose raw columns are already exactly orthonormal
// (random basis-vector designs). No centering: the order-statistic analysis
// needs the raw coordinates. Verifies X^T X = I.
StandardizedDataset orthonormal_view(const Dataset& d);

}  // namespace cpbench
