#pragma once

#include <span>
#include <vector>

#include "cpbench/mat.hpp"

namespace cpbench::detail {

// Modified Gram-Schmidt state over the candidate columns. Adding a column
// costs O(nm): every remaining candidate is residualized against the new
// orthonormal direction, which keeps per-candidate correlations and
// residual norms current for greedy RSS gains.
class IncrementalProjector {
 public:
  IncrementalProjector(const Mat& xs, std::span<const double> ys);

  int count() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& added() const { return order_; }
  bool is_added(int j) const { return added_[static_cast<std::size_t>(j)] != 0; }

  // squared norm of candidate j orthogonal to the current span
  double resid_norm2(int j) const { return h_[static_cast<std::size_t>(j)]; }
  // inner product of candidate j with the current residual
  double corr(int j) const { return c_[static_cast<std::size_t>(j)]; }
  // RSS drop if candidate j were added now
  double gain(int j) const;
  bool addable(int j, double tol = 1e-12) const;

  bool add(int j, double tol = 1e-12);

  double rss() const { return rss_; }
  std::vector<double> mu_hat() const;  // ys - residual
  // coefficients (length m, dense) of the current active set via the stored
  // R factor
  std::vector<double> coefficients() const;

 private:
  const Mat& xs_;
  std::size_t n_, m_;
  Mat work_;                     // residualized candidate columns
  std::vector<double> ys_;
  std::vector<double> r_;        // current residual
  std::vector<double> h_;        // ||x~_j||^2
  std::vector<double> c_;        // x~_j^T r
  std::vector<char> added_;
  std::vector<int> order_;
  std::vector<std::vector<double>> rrows_;  // R row t over all candidates
  std::vector<double> z_;                   // q_t^T ys
  double rss_ = 0.0;
};

}  // namespace cpbench::detail
