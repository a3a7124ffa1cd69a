#include "cpbench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"

namespace cpbench {

namespace {

std::string subset_to_string(std::span<const int> cols) {
  std::string s = "{";
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cols[i]);
  }
  s += "}";
  return s;
}

}  // namespace

LeastSquares qr_least_squares(const Mat& x, std::span<const int> cols,
                              std::span<const double> y, double max_condition) {
  const std::size_t n = x.rows;
  const std::size_t k = cols.size();
  LeastSquares out;
  out.fitted.assign(n, 0.0);
  if (k == 0) {
    out.rss = kernels::sumsq(y.data(), n);
    return out;
  }
  if (k > n) throw DataError("least squares: more columns than rows");

  Mat w(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double* src = x.col(static_cast<std::size_t>(cols[j]));
    double* dst = w.col(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
  }

  // Householder factorization, LAPACK-style reflectors v (v[0] = 1 implicit).
  std::vector<double> tau(k, 0.0);
  std::vector<double> rdiag(k, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    double* ct = w.col(t) + t;
    const std::size_t len = n - t;
    double nrm = std::sqrt(kernels::sumsq(ct, len));
    if (nrm == 0.0) {
      tau[t] = 0.0;
      rdiag[t] = 0.0;
      continue;
    }
    double alpha = (ct[0] >= 0.0) ? -nrm : nrm;
    double v0 = ct[0] - alpha;
    tau[t] = -v0 / alpha;  // = 2 / (1 + ||tail/v0||^2)
    const double inv_v0 = 1.0 / v0;
    for (std::size_t i = 1; i < len; ++i) ct[i] *= inv_v0;
    ct[0] = alpha;
    rdiag[t] = alpha;
    // apply (I - tau v v^T) to the remaining columns
    for (std::size_t j = t + 1; j < k; ++j) {
      double* cj = w.col(j) + t;
      double s = cj[0] + kernels::dot(ct + 1, cj + 1, len - 1);
      const double f = -tau[t] * s;
      cj[0] += f;
      kernels::axpy(f, ct + 1, cj + 1, len - 1);
    }
  }

  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < k; ++t) {
    const double a = std::abs(rdiag[t]);
    rmax = std::max(rmax, a);
    rmin = std::min(rmin, a);
  }
  if (rmin == 0.0 || rmax / rmin > max_condition)
    throw DataError("rank-deficient column subset " + subset_to_string(cols));

  // qty = Q^T y
  std::vector<double> qty(y.begin(), y.end());
  for (std::size_t t = 0; t < k; ++t) {
    if (tau[t] == 0.0) continue;
    const double* vt = w.col(t) + t;
    double* yt = qty.data() + t;
    const std::size_t len = n - t;
    double s = yt[0] + kernels::dot(vt + 1, yt + 1, len - 1);
    const double f = -tau[t] * s;
    yt[0] += f;
    kernels::axpy(f, vt + 1, yt + 1, len - 1);
  }

  // back-substitute R coef = qty[0..k)
  out.coef.assign(k, 0.0);
  for (std::size_t ti = k; ti-- > 0;) {
    double s = qty[ti];
    for (std::size_t j = ti + 1; j < k; ++j) s -= w(ti, j) * out.coef[j];
    out.coef[ti] = s / rdiag[ti];
  }

  // fitted = Q [qty_head; 0]: apply reflectors in reverse order
  std::vector<double>& fit = out.fitted;
  for (std::size_t i = 0; i < k; ++i) fit[i] = qty[i];
  for (std::size_t t = k; t-- > 0;) {
    if (tau[t] == 0.0) continue;
    const double* vt = w.col(t) + t;
    double* ft = fit.data() + t;
    const std::size_t len = n - t;
    double s = ft[0] + kernels::dot(vt + 1, ft + 1, len - 1);
    const double f = -tau[t] * s;
    ft[0] += f;
    kernels::axpy(f, vt + 1, ft + 1, len - 1);
  }

  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit[i];
    rss += r * r;
  }
  out.rss = rss;
  return out;
}

bool Cholesky::factor(const Mat& a, double tol) {
  const int m = static_cast<int>(a.rows);
  if (a.cols != a.rows) throw DataError("cholesky: matrix not square");
  dim_ = 0;
  rows_.assign(static_cast<std::size_t>(m) * (m + 1) / 2, 0.0);
  for (int i = 0; i < m; ++i) {
    double* ri = rows_.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
    for (int j = 0; j < i; ++j) {
      const double* rj = rows_.data() + static_cast<std::size_t>(j) * (j + 1) / 2;
      const double s = a(i, j) - kernels::dot(ri, rj, j);
      ri[j] = s / rj[j];
    }
    const double d2 = a(i, i) - kernels::sumsq(ri, i);
    if (d2 <= tol) return false;
    ri[i] = std::sqrt(d2);
    dim_ = i + 1;
  }
  return true;
}

bool Cholesky::append(const double* cross, double diag, double tol) {
  const int k = dim_;
  std::vector<double> wrow(k + 1, 0.0);
  solve_lower(cross, wrow.data());
  const double d2 = diag - kernels::sumsq(wrow.data(), k);
  if (d2 <= tol) return false;
  wrow[k] = std::sqrt(d2);
  rows_.insert(rows_.end(), wrow.begin(), wrow.end());
  dim_ = k + 1;
  return true;
}

void Cholesky::solve_lower(const double* b, double* z) const {
  for (int i = 0; i < dim_; ++i) {
    const double* ri = rows_.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
    z[i] = (b[i] - kernels::dot(ri, z, i)) / ri[i];
  }
}

void Cholesky::solve_upper(const double* z, double* x) const {
  for (int i = 0; i < dim_; ++i) x[i] = z[i];
  for (int i = dim_ - 1; i >= 0; --i) {
    const double* ri = rows_.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
    const double xi = x[i] / ri[i];
    x[i] = xi;
    for (int j = 0; j < i; ++j) x[j] -= ri[j] * xi;
  }
}

void Cholesky::solve(const double* b, double* x) const {
  std::vector<double> z(dim_, 0.0);
  solve_lower(b, z.data());
  solve_upper(z.data(), x);
}

}  // namespace cpbench
