#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpbench/dataset.hpp"
#include "cpbench/linalg.hpp"
#include "cpbench/path_fit.hpp"

namespace cpbench {

// Two-point spike-and-slab hierarchy: beta_j | gamma_j ~ N(0, gamma_j sigma2)
// with gamma_j in {v0, v1}, Bernoulli(w) slab membership, Beta(a, b) prior on
// w, inverse-gamma prior on sigma2. beta is drawn jointly from its Gaussian
// full conditional each sweep.
struct SvsConfig {
  double spike_variance = 1e-4;  // v0
  double slab_variance = 100.0;  // v1
  double inclusion_a = 1.0;      // Beta prior on the slab weight
  double inclusion_b = 1.0;
  double noise_shape = 2.01;  // inverse-gamma prior on sigma2
  double noise_scale = 1.01;
  int iterations = 5000;
  int burn_in = 1000;
  std::uint64_t seed = 0;
  std::uint64_t chain_id = 0;  // stream id; distinct chains never share draws
  // Optional stream label per coordinate (defaults to the coordinate index).
  // Lets permuted designs keep each variable's random draws, so a permuted
  // run reproduces the unpermuted chain.
  std::vector<std::uint64_t> coord_stream_ids;

  void validate() const;
};

struct PosteriorSummary {
  std::vector<double> post_mean_beta;  // average over kept sweeps
  std::vector<double> inclusion_freq;  // fraction of kept sweeps in the slab
  std::vector<double> max_abs_beta;    // per-coordinate |beta| envelope (kept sweeps)
  double sampled_sigma2_mean = 0.0;
  int kept_sweeps = 0;
};

PosteriorSummary svs_gibbs(const StandardizedDataset& d, const SvsConfig& cfg);

// Indices sorted by decreasing |posterior mean|, lower index first on ties.
std::vector<int> rank_covariates(const PosteriorSummary& s);

// Cp over OLS fits on ranked prefixes (df = k at prefix length k).
CpCurve ranked_cp_curve(const StandardizedDataset& d, std::span<const int> ranking,
                        double sigma2);

// Model-averaged predictor: Xs * post_mean_beta. Uses every covariate; for
// selection metrics its "selected set" is all m columns.
std::vector<double> svs_bma_predict(const PosteriorSummary& s,
                                    const StandardizedDataset& d);

// Full-conditional building blocks, exposed for direct verification.
namespace svs_detail {

// P(gamma_j = slab | beta_j, sigma2, w)
double slab_probability(double beta_j, double sigma2, double v0, double v1, double w);

// Posterior precision A = X^T X + diag(1/gamma) (beta | rest has mean
// A^-1 X^T y and covariance sigma2 A^-1).
Mat posterior_precision(const Mat& xtx, std::span<const double> gamma);

// Beta(a + #slab, b + m - #slab)
std::pair<double, double> w_posterior(double a, double b, int n_slab, int m);

// inverse-gamma(shape + (n+m)/2, scale + (rss + sum beta_j^2/gamma_j)/2)
std::pair<double, double> sigma2_posterior(double shape, double scale, int n, int m,
                                           double rss, double beta_quad);

}  // namespace svs_detail

}  // namespace cpbench
