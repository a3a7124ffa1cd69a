#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpbench {

// Responses observed at the m basis coordinates of a random orthogonal
// design, with the true dimension k0.
struct OrthoInstance {
  std::vector<double> yvals;       // m coordinate responses
  int k0 = 0;                      // count of nonzero true coordinates
  std::vector<double> abs_sorted;  // |yvals| descending
};

OrthoInstance make_ortho_instance(std::vector<double> yvals, int k0);

// V_j: the (j+1)st largest absolute response, 0 <= j <= m-1.
double order_stat_v(const OrthoInstance& inst, int j);

// Count of |Y| strictly above V_{k0} (equals k0 for continuous data).
int b_k_count(const OrthoInstance& inst, int k0);

struct CpGapReport {
  int k = 0, k0 = 0;
  double gap_exact = 0.0;  // Cp(k) - Cp(k0), sigma2 = 1
  double bound = 0.0;      // -delta_k * b_k + 2(k - k0)
  double delta_k = 0.0;    // V_{k0}^2 - V_k^2 >= 0
  int b_k = 0;
  bool tie_flag = false;  // ties at either threshold
};

// Term-by-term evaluation of the exact Cp difference between the step-k and
// step-k0 soft-threshold fits (1 <= k0 < k <= m; the k = m fit thresholds at
// zero). Verifies gap_exact <= bound and throws InvariantError otherwise.
CpGapReport cp_gap_closed_form(const OrthoInstance& inst, int k, int k0);

struct OverfitParams {
  int m = 400;
  int n = 800;
  int k0 = 105;
  std::vector<double> magnitudes;  // k0 true magnitudes (pre-scale)
  double signal_scale = 1.0;
  int reps = 100;
  std::uint64_t seed = 0;
  int k_probe = -1;  // gap probe dimension; default min(m, k0 + 15)
};

struct OverfitRepRow {
  int rep = 0;
  int k_hat = 0;
  double gap_exact = 0.0, bound = 0.0, delta_k = 0.0;
  int b_k = 0;
  bool tie_flag = false;
  bool has_gap = false;  // false when k0 = 0 (gap regime needs k0 >= 1)
};

struct OverfitReport {
  OverfitParams params;
  int k_probe = 0;
  std::vector<OverfitRepRow> rows;
  double p_overfit = 0.0;          // P(k_hat > k0)
  double mean_k_hat = 0.0;
  double frac_gap_negative = 0.0;  // among rows with a gap
  double mean_b_k = 0.0;
  std::vector<std::pair<int, int>> b_k_histogram;  // value -> count
  std::vector<double> mean_cp, sd_cp;              // per dimension 0..m
  std::vector<std::pair<int, int>> k_hat_histogram;
};

// Monte Carlo over random orthogonal instances: min-Cp dimension of the
// soft-threshold path (sigma2 = 1, df = k), the exact-gap bound at the probe
// dimension, and the B_k distribution.
OverfitReport mc_overfit_experiment(const OverfitParams& p);

}  // namespace cpbench
