#include "projector.hpp"

#include <cmath>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"

namespace cpbench::detail {

IncrementalProjector::IncrementalProjector(const Mat& xs, std::span<const double> ys)
    : xs_(xs),
      n_(xs.rows),
      m_(xs.cols),
      work_(xs),
      ys_(ys.begin(), ys.end()),
      r_(ys.begin(), ys.end()),
      h_(m_, 0.0),
      c_(m_, 0.0),
      added_(m_, 0) {
  for (std::size_t j = 0; j < m_; ++j) {
    h_[j] = kernels::sumsq(work_.col(j), n_);
    c_[j] = kernels::dot(work_.col(j), r_.data(), n_);
  }
  rss_ = kernels::sumsq(r_.data(), n_);
}

double IncrementalProjector::gain(int j) const {
  const double h = h_[static_cast<std::size_t>(j)];
  if (h <= 0.0) return 0.0;
  const double c = c_[static_cast<std::size_t>(j)];
  return c * c / h;
}

bool IncrementalProjector::addable(int j, double tol) const {
  return !is_added(j) && h_[static_cast<std::size_t>(j)] > tol;
}

bool IncrementalProjector::add(int j, double tol) {
  if (j < 0 || static_cast<std::size_t>(j) >= m_)
    throw DataError("projector: index out of range");
  if (is_added(j)) throw DataError("projector: column already added");
  if (h_[static_cast<std::size_t>(j)] <= tol) return false;

  double* q = work_.col(static_cast<std::size_t>(j));
  const double nrm = std::sqrt(h_[static_cast<std::size_t>(j)]);
  kernels::scale(1.0 / nrm, q, n_);

  const double z = kernels::dot(q, r_.data(), n_);
  kernels::axpy(-z, q, r_.data(), n_);
  rss_ = kernels::sumsq(r_.data(), n_);

  std::vector<double> rrow(m_, 0.0);
  rrow[static_cast<std::size_t>(j)] = nrm;
  for (std::size_t jj = 0; jj < m_; ++jj) {
    if (added_[jj] || jj == static_cast<std::size_t>(j)) continue;
    double* col = work_.col(jj);
    const double t = kernels::dot(col, q, n_);
    kernels::axpy(-t, q, col, n_);
    h_[jj] -= t * t;
    c_[jj] -= t * z;
    rrow[jj] = t;
    // guard against drift once a candidate is nearly inside the span
    if (h_[jj] < 1e-8) h_[jj] = kernels::sumsq(col, n_);
  }

  added_[static_cast<std::size_t>(j)] = 1;
  order_.push_back(j);
  rrows_.push_back(std::move(rrow));
  z_.push_back(z);
  h_[static_cast<std::size_t>(j)] = 0.0;
  c_[static_cast<std::size_t>(j)] = 0.0;
  return true;
}

std::vector<double> IncrementalProjector::mu_hat() const {
  std::vector<double> mu(n_);
  for (std::size_t i = 0; i < n_; ++i) mu[i] = ys_[i] - r_[i];
  return mu;
}

std::vector<double> IncrementalProjector::coefficients() const {
  const int k = count();
  std::vector<double> b(k, 0.0);
  for (int t = k - 1; t >= 0; --t) {
    double s = z_[static_cast<std::size_t>(t)];
    const std::vector<double>& row = rrows_[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < k; ++u)
      s -= row[static_cast<std::size_t>(order_[u])] * b[static_cast<std::size_t>(u)];
    b[static_cast<std::size_t>(t)] =
        s / row[static_cast<std::size_t>(order_[t])];
  }
  std::vector<double> dense(m_, 0.0);
  for (int t = 0; t < k; ++t) dense[static_cast<std::size_t>(order_[t])] = b[static_cast<std::size_t>(t)];
  return dense;
}

}  // namespace cpbench::detail
