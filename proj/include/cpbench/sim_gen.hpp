#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpbench/dataset.hpp"
#include "cpbench/rng.hpp"

namespace cpbench {

// High-dimensional benchmark scenario: AR(1)-correlated Gaussian covariates,
// coefficients in equally spaced clusters, signal scaled to a target
// theoretical R^2.
struct SimScenario {
  int n = 800;
  int m = 400;
  double rho = 0.0;            // E[x_j x_k] = rho^|j-k|
  int cluster_spacing = 25;    // cluster centers at 25, 50, ... (1-based)
  int cluster_halfwidth = 4;   // h: offsets -(h-1)..(h-1) are nonzero
  double exponent = 1.25;      // cluster value (h-|j|)^exponent
  double target_r2 = 0.75;
  double noise_sigma2 = 1.0;
  std::uint64_t seed = 0;
  // Use the asymmetric |h-j|^exponent form instead of (h-|j|)^exponent
  // (sensitivity runs only).
  bool literal_offset_form = false;

  void validate() const;
  int cluster_count() const;
  int nonzero_count() const;  // cluster_count * (2h-1); 105 under defaults
};

struct GroundTruth {
  std::vector<double> beta;      // m
  std::vector<int> nonzero_set;  // ascending indices
  double calibration_constant = 0.0;
  double theoretical_signal = 0.0;  // beta^T Sigma beta after calibration
};

// One i.i.d. sample per row; within a row the AR(1) recursion
// x_1 = z_1, x_j = rho x_{j-1} + sqrt(1-rho^2) z_j realizes cov rho^|j-k|.
// rho must lie in [0, 1).
Mat gen_ar1_covariates(int n, int m, double rho, rng::Stream& rs);

// Uncalibrated cluster pattern (zeros off the clusters).
std::vector<double> build_cluster_beta(const SimScenario& sc);

// Scale beta_base by c = sqrt((r2/(1-r2)) sigma2 / (b^T Sigma b)) so the
// theoretical R^2 hits the target. The quadratic form is summed over the
// band where rho^d > 1e-16 (exact for rho = 0).
GroundTruth calibrate_beta(std::span<const double> beta_base, double rho,
                           double target_r2, double sigma2);

// b^T Sigma b with Sigma_jk = rho^|j-k|, banded summation.
double quadratic_form_banded(std::span<const double> beta, double rho);

// Full dataset draw for one replication: X, y = X beta + eps, ground truth
// attached. Deterministic in (sc.seed, rep). When noise_sigma2 == 0 the
// signal is calibrated as if sigma2 were 1 and y equals mu exactly.
Dataset simulate_dataset(const SimScenario& sc, std::uint64_t rep);

// Empirical R^2 of the true model on a fresh draw of n_draws rows
// (streamed; the design is never materialized).
double empirical_r2(const SimScenario& sc, int n_draws, std::uint64_t rep);

// Random orthogonal design: m distinct standard basis vectors of R^n, true
// coefficients +-beta_magnitudes (random signs) on the first k0 columns,
// y = X beta + eps with unit noise variance.
Dataset gen_random_orthogonal(int n, int m, int k0,
                              std::span<const double> beta_magnitudes,
                              rng::Stream& rs);

// Cluster magnitudes rescaled for the orthogonal design so the signal energy
// sum beta_j^2 = n * r2/(1-r2) * sigma2 matches the scenario's R^2 target on
// unit-norm basis columns.
std::vector<double> ortho_calibrated_magnitudes(const SimScenario& sc);

}  // namespace cpbench
