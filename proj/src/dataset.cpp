#include "cpbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"

namespace cpbench {

void Dataset::validate() const {
  const std::size_t nn = n(), mm = m();
  if (nn < 2) throw DataError("dataset: need at least 2 observations");
  if (mm < 1) throw DataError("dataset: need at least 1 covariate");
  if (y.size() != nn) throw DataError("dataset: y length mismatch");
  for (double v : X.data)
    if (!std::isfinite(v)) throw DataError("dataset: non-finite entry in X");
  for (double v : y)
    if (!std::isfinite(v)) throw DataError("dataset: non-finite entry in y");
  if (!mu_true.empty() && mu_true.size() != nn)
    throw DataError("dataset: mu_true length mismatch");
  if (!beta_true.empty() && beta_true.size() != mm)
    throw DataError("dataset: beta_true length mismatch");
  if (!names.empty() && names.size() != mm)
    throw DataError("dataset: names length mismatch");
  if (!mu_true.empty() && !beta_true.empty()) {
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      double xi_beta = 0.0;
      for (std::size_t j = 0; j < mm; ++j) xi_beta += X(i, j) * beta_true[j];
      const double r = mu_true[i] - xi_beta;
      err += r * r;
      ref += mu_true[i] * mu_true[i];
    }
    if (err > 1e-20 * std::max(1.0, ref) && std::sqrt(err) > 1e-10 * std::sqrt(std::max(1.0, ref)))
      throw DataError("dataset: mu_true does not match X * beta_true");
  }
}

StandardizedDataset standardize(const Dataset& d) {
  d.validate();
  const std::size_t n = d.n(), m = d.m();
  StandardizedDataset out;
  out.Xs = Mat(n, m);
  out.column_means.resize(m);
  out.column_scales.resize(m);

  for (std::size_t j = 0; j < m; ++j) {
    const double* src = d.X.col(j);
    double* dst = out.Xs.col(j);
    const double mean = kernels::sum(src, n) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] - mean;
    const double nrm = std::sqrt(kernels::sumsq(dst, n));
    const double orig = std::sqrt(kernels::sumsq(src, n));
    if (nrm <= 1e-12 * std::max(1.0, orig))
      throw DataError("standardize: column " + std::to_string(j) +
                      (d.names.empty() ? "" : " (" + d.names[j] + ")") +
                      " is constant");
    kernels::scale(1.0 / nrm, dst, n);
    out.column_means[j] = mean;
    out.column_scales[j] = nrm;
  }

  out.y_mean = kernels::sum(d.y.data(), n) / static_cast<double>(n);
  out.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.ys[i] = d.y[i] - out.y_mean;
  return out;
}

StandardizedDataset orthonormal_view(const Dataset& d) {
  d.validate();
  const std::size_t n = d.n(), m = d.m();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      const double g = kernels::dot(d.X.col(j), d.X.col(k), n);
      const double want = (j == k) ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-9)
        throw DataError("orthonormal_view: columns are not orthonormal");
    }
  }
  StandardizedDataset out;
  out.Xs = d.X;
  out.ys = d.y;
  out.column_means.assign(m, 0.0);
  out.column_scales.assign(m, 1.0);
  out.y_mean = 0.0;
  return out;
}

}  // namespace cpbench
