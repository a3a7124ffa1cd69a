#include "cpbench/ortho_theory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cpbench/errors.hpp"
#include "cpbench/kernels.hpp"
#include "cpbench/rng.hpp"
#include "cpbench/sim_gen.hpp"

namespace cpbench {

OrthoInstance make_ortho_instance(std::vector<double> yvals, int k0) {
  const int m = static_cast<int>(yvals.size());
  if (m < 1) throw DataError("ortho instance: empty response");
  if (k0 < 0 || k0 > m) throw DataError("ortho instance: k0 out of range");
  for (double v : yvals)
    if (!std::isfinite(v)) throw DataError("ortho instance: non-finite value");
  OrthoInstance inst;
  inst.k0 = k0;
  inst.abs_sorted.resize(yvals.size());
  for (std::size_t j = 0; j < yvals.size(); ++j)
    inst.abs_sorted[j] = std::abs(yvals[j]);
  std::sort(inst.abs_sorted.begin(), inst.abs_sorted.end(), std::greater<double>());
  inst.yvals = std::move(yvals);
  return inst;
}

double order_stat_v(const OrthoInstance& inst, int j) {
  if (j < 0 || j >= static_cast<int>(inst.abs_sorted.size()))
    throw DataError("order_stat_v: j out of range");
  return inst.abs_sorted[static_cast<std::size_t>(j)];
}

int b_k_count(const OrthoInstance& inst, int k0) {
  const int m = static_cast<int>(inst.yvals.size());
  if (k0 < 0 || k0 >= m) throw DataError("b_k_count: k0 out of range");
  const double vk0 = inst.abs_sorted[static_cast<std::size_t>(k0)];
  int count = 0;
  for (double v : inst.yvals)
    if (std::abs(v) > vk0) ++count;
  return count;
}

CpGapReport cp_gap_closed_form(const OrthoInstance& inst, int k, int k0) {
  const int m = static_cast<int>(inst.yvals.size());
  if (!(1 <= k0 && k0 < k && k <= m))
    throw DataError("cp_gap: need 1 <= k0 < k <= m");

  const double vk0 = inst.abs_sorted[static_cast<std::size_t>(k0)];
  const double vk = (k < m) ? inst.abs_sorted[static_cast<std::size_t>(k)] : 0.0;

  CpGapReport rep;
  rep.k = k;
  rep.k0 = k0;
  rep.delta_k = vk0 * vk0 - vk * vk;
  rep.b_k = b_k_count(inst, k0);

  double mid_count = 0.0, mid_sumsq = 0.0;
  int ties_k0 = 0, ties_k = 0;
  for (double y : inst.yvals) {
    const double a = std::abs(y);
    if (a > vk && a <= vk0) {
      mid_count += 1.0;
      mid_sumsq += y * y;
    }
    if (a == vk0) ++ties_k0;
    if (k < m && a == vk) ++ties_k;
  }
  rep.tie_flag = ties_k0 > 1 || ties_k > 1;
  rep.gap_exact = (vk * vk - vk0 * vk0) * static_cast<double>(rep.b_k) +
                  vk * vk * mid_count - mid_sumsq + 2.0 * (k - k0);
  rep.bound = -rep.delta_k * static_cast<double>(rep.b_k) + 2.0 * (k - k0);
  if (rep.gap_exact > rep.bound + 1e-9)
    throw InvariantError("cp_gap: exact difference exceeds the bound (" +
                         std::to_string(rep.gap_exact) + " > " +
                         std::to_string(rep.bound) + ")");
  return rep;
}

namespace {

// residual sums of squares of the soft-threshold fit at every dimension,
// restricted to the design coordinates: rss_on[k] = k V_k^2 + sum of the
// m - k smallest squared responses (V_m taken as 0)
std::vector<double> on_coordinate_rss(const OrthoInstance& inst) {
  const int m = static_cast<int>(inst.yvals.size());
  std::vector<double> suffix(m + 1, 0.0);
  for (int j = m - 1; j >= 0; --j) {
    const double a = inst.abs_sorted[static_cast<std::size_t>(j)];
    suffix[j] = suffix[j + 1] + a * a;
  }
  std::vector<double> rss(m + 1, 0.0);
  for (int k = 0; k < m; ++k) {
    const double vk = inst.abs_sorted[static_cast<std::size_t>(k)];
    rss[k] = static_cast<double>(k) * vk * vk + suffix[k];
  }
  rss[m] = 0.0;
  return rss;
}

}  // namespace

OverfitReport mc_overfit_experiment(const OverfitParams& p) {
  if (static_cast<int>(p.magnitudes.size()) != p.k0)
    throw DataError("overfit experiment: need k0 magnitudes");
  if (p.reps < 1) throw DataError("overfit experiment: reps must be >= 1");
  if (p.m < 1 || p.m > p.n) throw DataError("overfit experiment: need 1 <= m <= n");

  OverfitReport rep;
  rep.params = p;
  rep.k_probe = (p.k_probe > 0) ? p.k_probe : std::min(p.m, p.k0 + 15);
  if (p.k0 >= 1 && (rep.k_probe <= p.k0 || rep.k_probe > p.m))
    throw DataError("overfit experiment: probe dimension must lie in (k0, m]");

  std::vector<double> mags(p.magnitudes);
  for (double& v : mags) v *= p.signal_scale;

  std::vector<double> cp_sum(p.m + 1, 0.0), cp_sumsq(p.m + 1, 0.0);
  std::map<int, int> khist, bhist;
  int overfit = 0;
  long long k_hat_total = 0;
  int gap_negative = 0, gap_rows = 0;
  double b_total = 0.0;

  for (int r = 0; r < p.reps; ++r) {
    rng::Stream rs = rng::make_stream(p.seed, rng::Domain::theory,
                                      static_cast<std::uint64_t>(r));
    Dataset d = gen_random_orthogonal(p.n, p.m, p.k0, mags, rs);

    std::vector<double> yvals(p.m);
    for (int j = 0; j < p.m; ++j)
      yvals[j] = kernels::dot(d.X.col(static_cast<std::size_t>(j)), d.y.data(),
                              static_cast<std::size_t>(p.n));
    const double y_total = kernels::sumsq(d.y.data(), static_cast<std::size_t>(p.n));
    const double off_rss = y_total - kernels::sumsq(yvals.data(), yvals.size());

    OrthoInstance inst = make_ortho_instance(yvals, p.k0);
    const std::vector<double> on_rss = on_coordinate_rss(inst);

    int k_hat = 0;
    double best = 0.0;
    for (int k = 0; k <= p.m; ++k) {
      const double cp = on_rss[static_cast<std::size_t>(k)] + off_rss -
                        static_cast<double>(p.n) + 2.0 * k;
      cp_sum[static_cast<std::size_t>(k)] += cp;
      cp_sumsq[static_cast<std::size_t>(k)] += cp * cp;
      if (k == 0 || cp < best) {
        best = cp;
        k_hat = k;
      }
    }
    khist[k_hat]++;
    k_hat_total += k_hat;
    if (k_hat > p.k0) ++overfit;

    OverfitRepRow row;
    row.rep = r;
    row.k_hat = k_hat;
    if (p.k0 >= 1) {
      const CpGapReport gap = cp_gap_closed_form(inst, rep.k_probe, p.k0);
      row.gap_exact = gap.gap_exact;
      row.bound = gap.bound;
      row.delta_k = gap.delta_k;
      row.b_k = gap.b_k;
      row.tie_flag = gap.tie_flag;
      row.has_gap = true;
      ++gap_rows;
      if (gap.gap_exact < 0.0) ++gap_negative;
      b_total += gap.b_k;
      bhist[gap.b_k]++;
    } else {
      const int b = b_k_count(inst, 0);
      row.b_k = b;
      b_total += b;
      bhist[b]++;
    }
    rep.rows.push_back(row);
  }

  rep.p_overfit = static_cast<double>(overfit) / p.reps;
  rep.mean_k_hat = static_cast<double>(k_hat_total) / p.reps;
  rep.frac_gap_negative =
      gap_rows > 0 ? static_cast<double>(gap_negative) / gap_rows : 0.0;
  rep.mean_b_k = b_total / p.reps;
  rep.mean_cp.resize(p.m + 1);
  rep.sd_cp.resize(p.m + 1);
  for (int k = 0; k <= p.m; ++k) {
    const double mean = cp_sum[static_cast<std::size_t>(k)] / p.reps;
    rep.mean_cp[static_cast<std::size_t>(k)] = mean;
    const double var =
        p.reps > 1 ? std::max(0.0, (cp_sumsq[static_cast<std::size_t>(k)] -
                                    p.reps * mean * mean) /
                                       (p.reps - 1))
                   : 0.0;
    rep.sd_cp[static_cast<std::size_t>(k)] = std::sqrt(var);
  }
  for (const auto& [k, c] : khist) rep.k_hat_histogram.emplace_back(k, c);
  for (const auto& [b, c] : bhist) rep.b_k_histogram.emplace_back(b, c);
  return rep;
}

}  // namespace cpbench
