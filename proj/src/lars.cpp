#include "cpbench/lars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/linalg.hpp"

namespace cpbench {

namespace {
constexpr double kEps = 1e-12;
}

PathFit lars_path(const StandardizedDataset& d, int max_steps) {
  const std::size_t n = d.n(), m = d.m();
  const int step_cap = static_cast<int>(std::min(m, n - 1));
  if (max_steps < 0 || max_steps > step_cap)
    throw DataError("lars_path: max_steps must lie in [0, min(m, n-1)]");

  PathFit path;
  path.method_tag = MethodTag::lars;

  std::vector<double> mu(n, 0.0);
  std::vector<double> resid(d.ys);
  std::vector<double> beta(m, 0.0);
  std::vector<char> is_active(m, 0);
  std::vector<int> active;
  std::vector<double> signs;  // per active variable, sign at entry
  Cholesky gram;              // factor of the signed active Gram

  PathStep step0;
  step0.coeffs = beta;
  step0.mu_hat = mu;
  step0.rss = kernels::sumsq(resid.data(), n);
  path.steps.push_back(std::move(step0));

  std::vector<double> corr(m), adir(m), cross, w;
  for (int step = 1; step <= max_steps; ++step) {
    for (std::size_t j = 0; j < m; ++j)
      corr[j] = kernels::dot(d.Xs.col(j), resid.data(), n);

    // entering variable: maximal |corr| over inactive, lowest index on ties
    int enter = -1;
    double cmax = -1.0;
    int ties = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (is_active[j]) continue;
      const double a = std::abs(corr[j]);
      if (a > cmax) {
        cmax = a;
        enter = static_cast<int>(j);
        ties = 0;
      } else if (a == cmax) {
        ++ties;
      }
    }
    path.tie_events += ties;
    if (enter < 0 || cmax <= kEps) {
      path.truncated = true;
      path.truncation_reason = "residual uncorrelated with every inactive column";
      break;
    }

    const double sign_new = corr[enter] >= 0.0 ? 1.0 : -1.0;
    cross.assign(active.size(), 0.0);
    for (std::size_t a = 0; a < active.size(); ++a)
      cross[a] = signs[a] * sign_new *
                 kernels::dot(d.Xs.col(active[a]), d.Xs.col(enter), n);
    const double diag = kernels::sumsq(d.Xs.col(enter), n);
    if (!gram.append(cross.data(), diag, kEps)) {
      path.truncated = true;
      path.truncation_reason =
          "active Gram numerically singular adding column " + std::to_string(enter);
      break;
    }
    active.push_back(enter);
    signs.push_back(sign_new);
    is_active[enter] = 1;
    const int k = static_cast<int>(active.size());

    // equiangular direction u = sum_a w_a s_a x_a with unit norm and equal
    // angle: solve G w_raw = 1, scale by (1^T G^-1 1)^{-1/2}
    std::vector<double> ones(k, 1.0);
    w.assign(k, 0.0);
    gram.solve(ones.data(), w.data());
    const double denom = kernels::sum(w.data(), k);
    if (!(denom > 0.0)) {
      path.truncated = true;
      path.truncation_reason = "equiangular normalization failed";
      active.pop_back();
      signs.pop_back();
      is_active[enter] = 0;
      break;
    }
    const double aa = 1.0 / std::sqrt(denom);
    kernels::scale(aa, w.data(), k);

    std::vector<double> u(n, 0.0);
    for (int a = 0; a < k; ++a)
      kernels::axpy(w[a] * signs[a], d.Xs.col(active[a]), u.data(), n);
    for (std::size_t j = 0; j < m; ++j)
      adir[j] = kernels::dot(d.Xs.col(j), u.data(), n);

    // default step runs all the way to the OLS fit of the active set; any
    // inactive variable reaching the common correlation level stops it early
    const double cbar = cmax;
    double gamma = cbar / aa;
    for (std::size_t j = 0; j < m; ++j) {
      if (is_active[j]) continue;
      const double d1 = (cbar - corr[j]) / (aa - adir[j]);
      const double d2 = (cbar + corr[j]) / (aa + adir[j]);
      if (d1 > kEps && d1 < gamma) gamma = d1;
      if (d2 > kEps && d2 < gamma) gamma = d2;
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      path.truncated = true;
      path.truncation_reason = "nonpositive step length";
      break;
    }

    kernels::axpy(gamma, u.data(), mu.data(), n);
    kernels::axpy(-gamma, u.data(), resid.data(), n);
    for (int a = 0; a < k; ++a) beta[active[a]] += gamma * w[a] * signs[a];

    PathStep st;
    st.active = active;
    st.coeffs = beta;
    st.mu_hat = mu;
    st.rss = kernels::sumsq(resid.data(), n);
    path.steps.push_back(std::move(st));
  }
  return path;
}

std::vector<double> soft_threshold_fit(std::span<const double> yvals, int k,
                                       bool* tie_flag) {
  const int m = static_cast<int>(yvals.size());
  if (k < 0 || k >= m) throw DataError("soft_threshold_fit: k out of range");
  for (double v : yvals)
    if (!std::isfinite(v)) throw DataError("soft_threshold_fit: non-finite value");

  std::vector<double> absv(m);
  for (int j = 0; j < m; ++j) absv[j] = std::abs(yvals[j]);
  std::vector<double> sorted(absv);
  std::nth_element(sorted.begin(), sorted.begin() + k, sorted.end(),
                   std::greater<double>());
  const double vk = sorted[k];  // (k+1)st largest

  std::vector<double> fit(m, 0.0);
  int nonzero = 0;
  for (int j = 0; j < m; ++j) {
    const double mag = absv[j] - vk;
    if (mag > 0.0) {
      fit[j] = (yvals[j] >= 0.0 ? mag : -mag);
      ++nonzero;
    }
  }
  if (tie_flag) *tie_flag = (nonzero != k);
  return fit;
}

}  // namespace cpbench
