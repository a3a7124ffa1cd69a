#include "cpbench/sim_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cpbench/errors.hpp"

namespace cpbench {

void SimScenario::validate() const {
  if (n < 2) throw DataError("scenario: n must be >= 2");
  if (m < 1) throw DataError("scenario: m must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0))
    throw DataError("scenario: rho must lie in [0, 1)");
  if (cluster_halfwidth < 1) throw DataError("scenario: h must be >= 1");
  if (cluster_spacing <= 2 * (cluster_halfwidth - 1))
    throw DataError("scenario: clusters overlap (spacing <= 2(h-1))");
  if (!(exponent > 0.0)) throw DataError("scenario: exponent must be positive");
  if (!(target_r2 > 0.0 && target_r2 < 1.0))
    throw DataError("scenario: target R^2 must lie in (0, 1)");
  if (noise_sigma2 < 0.0) throw DataError("scenario: negative noise variance");
  if (cluster_count() < 1)
    throw DataError("scenario: no cluster fits inside [1, m]");
}

int SimScenario::cluster_count() const {
  // 1-based centers at spacing, 2*spacing, ...; the whole cluster must fit
  int count = 0;
  for (int c = cluster_spacing;
       c - (cluster_halfwidth - 1) >= 1 && c + (cluster_halfwidth - 1) <= m;
       c += cluster_spacing)
    ++count;
  return count;
}

int SimScenario::nonzero_count() const {
  return cluster_count() * (2 * cluster_halfwidth - 1);
}

Mat gen_ar1_covariates(int n, int m, double rho, rng::Stream& rs) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw DataError("gen_ar1_covariates: rho must lie in [0, 1)");
  Mat x(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  const double innov = std::sqrt(1.0 - rho * rho);
  for (int i = 0; i < n; ++i) {
    double prev = rs.gaussian();
    x(i, 0) = prev;
    for (int j = 1; j < m; ++j) {
      prev = rho * prev + innov * rs.gaussian();
      x(i, j) = prev;
    }
  }
  return x;
}

std::vector<double> build_cluster_beta(const SimScenario& sc) {
  sc.validate();
  std::vector<double> beta(sc.m, 0.0);
  const int h = sc.cluster_halfwidth;
  for (int c = sc.cluster_spacing; c + (h - 1) <= sc.m; c += sc.cluster_spacing) {
    if (c - (h - 1) < 1) throw DataError("cluster extends below index 1");
    for (int j = -(h - 1); j <= h - 1; ++j) {
      const double base =
          sc.literal_offset_form ? std::abs(static_cast<double>(h - j))
                                 : static_cast<double>(h - std::abs(j));
      beta[c - 1 + j] = std::pow(base, sc.exponent);  // c is 1-based
    }
  }
  return beta;
}

double quadratic_form_banded(std::span<const double> beta, double rho) {
  const int m = static_cast<int>(beta.size());
  double q = 0.0;
  for (double b : beta) q += b * b;
  if (rho == 0.0) return q;
  // rho^d falls below 1e-16 beyond this lag
  const int band = std::min<int>(
      m - 1, static_cast<int>(std::ceil(-16.0 * std::log(10.0) / std::log(rho))));
  double rp = 1.0;
  for (int d = 1; d <= band; ++d) {
    rp *= rho;
    double s = 0.0;
    for (int j = 0; j + d < m; ++j) s += beta[j] * beta[j + d];
    q += 2.0 * rp * s;
  }
  return q;
}

GroundTruth calibrate_beta(std::span<const double> beta_base, double rho,
                           double target_r2, double sigma2) {
  const double q = quadratic_form_banded(beta_base, rho);
  if (!(q > 0.0)) throw DataError("calibrate_beta: zero quadratic form");
  if (!(sigma2 > 0.0)) throw DataError("calibrate_beta: sigma2 must be positive");
  if (!(target_r2 > 0.0 && target_r2 < 1.0))
    throw DataError("calibrate_beta: target R^2 must lie in (0, 1)");
  GroundTruth gt;
  gt.calibration_constant = std::sqrt(target_r2 / (1.0 - target_r2) * sigma2 / q);
  gt.beta.resize(beta_base.size());
  for (std::size_t j = 0; j < beta_base.size(); ++j) {
    gt.beta[j] = gt.calibration_constant * beta_base[j];
    if (gt.beta[j] != 0.0) gt.nonzero_set.push_back(static_cast<int>(j));
  }
  gt.theoretical_signal = gt.calibration_constant * gt.calibration_constant * q;
  return gt;
}

Dataset simulate_dataset(const SimScenario& sc, std::uint64_t rep) {
  sc.validate();
  const double calib_sigma2 = sc.noise_sigma2 > 0.0 ? sc.noise_sigma2 : 1.0;
  const GroundTruth gt =
      calibrate_beta(build_cluster_beta(sc), sc.rho, sc.target_r2, calib_sigma2);

  rng::Stream cov = rng::make_stream(sc.seed, rng::Domain::covariates, rep);
  rng::Stream noise = rng::make_stream(sc.seed, rng::Domain::noise, rep);

  Dataset d;
  d.X = gen_ar1_covariates(sc.n, sc.m, sc.rho, cov);
  d.beta_true = gt.beta;
  d.mu_true.assign(sc.n, 0.0);
  for (int j : gt.nonzero_set) {
    const double* col = d.X.col(static_cast<std::size_t>(j));
    const double b = gt.beta[j];
    for (int i = 0; i < sc.n; ++i) d.mu_true[i] += b * col[i];
  }
  d.y.resize(sc.n);
  const double sd = std::sqrt(sc.noise_sigma2);
  for (int i = 0; i < sc.n; ++i)
    d.y[i] = d.mu_true[i] + (sd > 0.0 ? sd * noise.gaussian() : 0.0);
  return d;
}

double empirical_r2(const SimScenario& sc, int n_draws, std::uint64_t rep) {
  sc.validate();
  if (n_draws < 2) throw DataError("empirical_r2: need at least 2 draws");
  const double calib_sigma2 = sc.noise_sigma2 > 0.0 ? sc.noise_sigma2 : 1.0;
  const GroundTruth gt =
      calibrate_beta(build_cluster_beta(sc), sc.rho, sc.target_r2, calib_sigma2);

  rng::Stream cov = rng::make_stream(sc.seed, rng::Domain::covariates, rep);
  rng::Stream noise = rng::make_stream(sc.seed, rng::Domain::noise, rep);

  const double innov = std::sqrt(1.0 - sc.rho * sc.rho);
  const double sd = std::sqrt(sc.noise_sigma2);
  std::vector<double> row(sc.m);
  double sum_y = 0.0, sum_y2 = 0.0, rss = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    double prev = cov.gaussian();
    row[0] = prev;
    for (int j = 1; j < sc.m; ++j) {
      prev = sc.rho * prev + innov * cov.gaussian();
      row[j] = prev;
    }
    double mu = 0.0;
    for (int j : gt.nonzero_set) mu += gt.beta[j] * row[j];
    const double y = mu + (sd > 0.0 ? sd * noise.gaussian() : 0.0);
    sum_y += y;
    sum_y2 += y * y;
    rss += (y - mu) * (y - mu);
  }
  const double tss = sum_y2 - sum_y * sum_y / static_cast<double>(n_draws);
  if (!(tss > 0.0)) throw DataError("empirical_r2: degenerate response");
  return 1.0 - rss / tss;
}

Dataset gen_random_orthogonal(int n, int m, int k0,
                              std::span<const double> beta_magnitudes,
                              rng::Stream& rs) {
  if (m > n) throw DataError("gen_random_orthogonal: m must be <= n");
  if (k0 < 0 || k0 > m) throw DataError("gen_random_orthogonal: k0 out of range");
  if (static_cast<int>(beta_magnitudes.size()) != k0)
    throw DataError("gen_random_orthogonal: need exactly k0 magnitudes");

  // partial Fisher-Yates: first m entries are a uniform ordered m-subset
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < m; ++t) {
    const std::uint64_t pick =
        static_cast<std::uint64_t>(t) + rs.next_below(static_cast<std::uint64_t>(n - t));
    std::swap(idx[t], idx[static_cast<std::size_t>(pick)]);
  }

  Dataset d;
  d.X = Mat(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  d.beta_true.assign(m, 0.0);
  d.mu_true.assign(n, 0.0);
  for (int j = 0; j < m; ++j) d.X(static_cast<std::size_t>(idx[j]), j) = 1.0;
  for (int j = 0; j < k0; ++j) {
    const double sign = (rs.next_u64() & 1) ? 1.0 : -1.0;
    d.beta_true[j] = sign * beta_magnitudes[j];
    d.mu_true[static_cast<std::size_t>(idx[j])] = d.beta_true[j];
  }
  d.y.resize(n);
  for (int i = 0; i < n; ++i) d.y[i] = d.mu_true[i] + rs.gaussian();
  return d;
}

std::vector<double> ortho_calibrated_magnitudes(const SimScenario& sc) {
  std::vector<double> base = build_cluster_beta(sc);
  std::vector<double> mags;
  double energy = 0.0;
  for (double b : base)
    if (b != 0.0) {
      mags.push_back(b);
      energy += b * b;
    }
  if (mags.empty()) throw DataError("ortho magnitudes: empty cluster pattern");
  const double sigma2 = sc.noise_sigma2 > 0.0 ? sc.noise_sigma2 : 1.0;
  const double target =
      static_cast<double>(sc.n) * sc.target_r2 / (1.0 - sc.target_r2) * sigma2;
  const double scale = std::sqrt(target / energy);
  for (double& v : mags) v *= scale;
  return mags;
}

}  // namespace cpbench
