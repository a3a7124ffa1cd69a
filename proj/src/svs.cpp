#include "cpbench/svs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/rng.hpp"
#include "cpbench/stepwise.hpp"

namespace cpbench {

void SvsConfig::validate() const {
  if (!(spike_variance > 0.0)) throw DataError("svs: spike variance must be > 0");
  if (!(slab_variance > spike_variance))
    throw DataError("svs: slab variance must exceed the spike variance");
  if (!(inclusion_a > 0.0 && inclusion_b > 0.0))
    throw DataError("svs: inclusion prior parameters must be positive");
  if (!(noise_shape > 0.0 && noise_scale > 0.0))
    throw DataError("svs: noise prior parameters must be positive");
  if (burn_in < 0 || iterations <= burn_in)
    throw DataError("svs: need iterations > burn_in >= 0");
}

namespace svs_detail {

double slab_probability(double beta_j, double sigma2, double v0, double v1,
                        double w) {
  const double log_odds = std::log(w) - std::log1p(-w) +
                          0.5 * (std::log(v0) - std::log(v1)) +
                          0.5 * beta_j * beta_j / sigma2 * (1.0 / v0 - 1.0 / v1);
  if (log_odds > 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

Mat posterior_precision(const Mat& xtx, std::span<const double> gamma) {
  Mat a = xtx;
  for (std::size_t j = 0; j < gamma.size(); ++j) a(j, j) += 1.0 / gamma[j];
  return a;
}

std::pair<double, double> w_posterior(double a, double b, int n_slab, int m) {
  return {a + static_cast<double>(n_slab), b + static_cast<double>(m - n_slab)};
}

std::pair<double, double> sigma2_posterior(double shape, double scale, int n, int m,
                                           double rss, double beta_quad) {
  return {shape + 0.5 * static_cast<double>(n + m),
          scale + 0.5 * (rss + beta_quad)};
}

}  // namespace svs_detail

PosteriorSummary svs_gibbs(const StandardizedDataset& d, const SvsConfig& cfg) {
  cfg.validate();
  const std::size_t n = d.n(), m = d.m();
  if (!cfg.coord_stream_ids.empty() && cfg.coord_stream_ids.size() != m)
    throw DataError("svs: coord_stream_ids length mismatch");

  // fixed per-dataset cross products
  Mat xtx(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      const double g = kernels::dot(d.Xs.col(j), d.Xs.col(k), n);
      xtx(j, k) = g;
      xtx(k, j) = g;
    }
  }
  std::vector<double> xty(m);
  for (std::size_t j = 0; j < m; ++j)
    xty[j] = kernels::dot(d.Xs.col(j), d.ys.data(), n);

  std::vector<rng::Stream> coord;
  coord.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::uint64_t sub =
        cfg.coord_stream_ids.empty() ? j : cfg.coord_stream_ids[j];
    coord.push_back(rng::make_stream(cfg.seed, rng::Domain::svs_coord, cfg.chain_id, sub));
  }
  rng::Stream shared = rng::make_stream(cfg.seed, rng::Domain::svs_shared, cfg.chain_id);
  rng::Stream rows = rng::make_stream(cfg.seed, rng::Domain::svs_rows, cfg.chain_id);

  // start in the slab everywhere: the first beta draw is then a mild ridge
  // fit rather than a hard-zeroed state the spike would never leave
  std::vector<double> gamma(m, cfg.slab_variance);
  std::vector<double> prev_gamma;
  std::vector<double> beta(m, 0.0);
  double sigma2 = 1.0;
  double w = 0.5;

  PosteriorSummary out;
  out.post_mean_beta.assign(m, 0.0);
  out.inclusion_freq.assign(m, 0.0);
  out.max_abs_beta.assign(m, 0.0);
  out.kept_sweeps = cfg.iterations - cfg.burn_in;

  Cholesky chol;
  std::vector<double> rhs(m), evec(n), fit(n);
  double sigma2_sum = 0.0;

  for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
    // ---- beta | gamma, sigma2 ----
    if (gamma != prev_gamma) {
      Mat a = svs_detail::posterior_precision(xtx, gamma);
      if (!chol.factor(a, 0.0))
        throw DataError("svs: posterior precision factorization failed");
      prev_gamma = gamma;
    }
    // perturbation sampling: rhs = X^T y + X^T e + Gamma^{-1/2} eps with
    // e ~ N(0, sigma2 I_n), eps ~ N(0, sigma2 I_m) gives
    // beta = A^{-1} rhs ~ N(A^{-1} X^T y, sigma2 A^{-1})
    const double sd = std::sqrt(sigma2);
    for (std::size_t i = 0; i < n; ++i) evec[i] = sd * rows.gaussian();
    for (std::size_t j = 0; j < m; ++j) {
      rhs[j] = xty[j] + kernels::dot(d.Xs.col(j), evec.data(), n) +
               sd / std::sqrt(gamma[j]) * coord[j].gaussian();
    }
    chol.solve(rhs.data(), beta.data());

    // ---- gamma | beta, w, sigma2 ----
    int n_slab = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double p = svs_detail::slab_probability(beta[j], sigma2, cfg.spike_variance,
                                                    cfg.slab_variance, w);
      const bool slab = coord[j].uniform01() < p;
      gamma[j] = slab ? cfg.slab_variance : cfg.spike_variance;
      n_slab += slab;
    }

    // ---- w | gamma ----
    const auto [wa, wb] =
        svs_detail::w_posterior(cfg.inclusion_a, cfg.inclusion_b, n_slab,
                                static_cast<int>(m));
    w = shared.beta(wa, wb);

    // ---- sigma2 | beta, gamma ----
    std::fill(fit.begin(), fit.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j)
      if (beta[j] != 0.0) kernels::axpy(beta[j], d.Xs.col(j), fit.data(), n);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = d.ys[i] - fit[i];
      rss += r * r;
    }
    double beta_quad = 0.0;
    for (std::size_t j = 0; j < m; ++j) beta_quad += beta[j] * beta[j] / gamma[j];
    const auto [s_shape, s_scale] = svs_detail::sigma2_posterior(
        cfg.noise_shape, cfg.noise_scale, static_cast<int>(n), static_cast<int>(m),
        rss, beta_quad);
    sigma2 = shared.inverse_gamma(s_shape, s_scale);

    if (sweep >= cfg.burn_in) {
      for (std::size_t j = 0; j < m; ++j) {
        out.post_mean_beta[j] += beta[j];
        out.inclusion_freq[j] += (gamma[j] == cfg.slab_variance) ? 1.0 : 0.0;
        out.max_abs_beta[j] = std::max(out.max_abs_beta[j], std::abs(beta[j]));
      }
      sigma2_sum += sigma2;
    }
  }

  const double inv_kept = 1.0 / static_cast<double>(out.kept_sweeps);
  for (std::size_t j = 0; j < m; ++j) {
    out.post_mean_beta[j] *= inv_kept;
    out.inclusion_freq[j] *= inv_kept;
  }
  out.sampled_sigma2_mean = sigma2_sum * inv_kept;
  return out;
}

std::vector<int> rank_covariates(const PosteriorSummary& s) {
  std::vector<int> order(s.post_mean_beta.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double va = std::abs(s.post_mean_beta[static_cast<std::size_t>(a)]);
    const double vb = std::abs(s.post_mean_beta[static_cast<std::size_t>(b)]);
    if (va != vb) return va > vb;
    return a < b;
  });
  return order;
}

CpCurve ranked_cp_curve(const StandardizedDataset& d, std::span<const int> ranking,
                        double sigma2) {
  const int cap = static_cast<int>(std::min(d.m(), d.n() - 1));
  PathFit path =
      ranked_prefix_path(d, ranking, std::min<int>(cap, static_cast<int>(ranking.size())));
  return path_cp_curve(path, sigma2, d.n());
}

std::vector<double> svs_bma_predict(const PosteriorSummary& s,
                                    const StandardizedDataset& d) {
  const std::size_t n = d.n(), m = d.m();
  if (s.post_mean_beta.size() != m)
    throw DataError("svs_bma_predict: dimension mismatch");
  std::vector<double> mu(n, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    if (s.post_mean_beta[j] != 0.0)
      kernels::axpy(s.post_mean_beta[j], d.Xs.col(j), mu.data(), n);
  return mu;
}

}  // namespace cpbench
